use lears_core::classify::random_valid_spec;
use lears_core::lears::{construct, validate_spec, verify_window};
use lears_core::loopalg::octonion::Octonion;
use lears_core::loopalg::{realize, Cocycle, JacobiMode, LoopLabel};
use lears_core::qgroup::parse_group;
use lears_core::rational::q;
use lears_core::rootsys::RootSystemDesc;
use lears_core::{QSubgroup, Q};
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TYPES: [&str; 8] = ["A2", "B2", "C3", "D4", "BC1", "BC2", "F4", "G2"];

fn ratio() -> impl Strategy<Value = Q> {
    (-6i128..=6, 1i128..=4).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| Q::new(n, d)))
}

fn octonion() -> impl Strategy<Value = Octonion> {
    prop::collection::vec(-3i128..=3, 8)
        .prop_map(|c| Octonion::from_coords(&c.into_iter().map(q).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn power_cocycles_satisfy_the_cocycle_law(lambda in ratio(), unit in ratio()) {
        let g = QSubgroup::cyclic(unit).unwrap();
        let window = g.enumerate_window(&(unit.abs() * q(3))).unwrap();
        let c = Cocycle::Power { lambda, unit };
        prop_assert!(c.check(&window).passed());
        prop_assert!(c.tabulate(&window).unwrap().check(&window).passed());
    }

    #[test]
    fn random_specs_validate_and_verify(ty in 0..TYPES.len(), seed in any::<u64>()) {
        let desc: RootSystemDesc = TYPES[ty].parse().unwrap();
        let spec = random_valid_spec(&desc, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert!(validate_spec(&spec).passed(), "{}", spec);
        let w = construct(&spec, &(spec.group.unit() * q(2))).unwrap();
        let r = verify_window(&w);
        prop_assert!(r.passed(), "{}: {}", spec, r.report);
    }

    #[test]
    fn shift_normal_form_is_shift_invariant(ty in 0..TYPES.len(), seed in any::<u64>(), k in -3i128..=3, j in -3i128..=3) {
        let desc: RootSystemDesc = TYPES[ty].parse().unwrap();
        let spec = random_valid_spec(&desc, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let t = &spec.triple;
        let u = spec.group.unit();
        let s = t.s.representatives()[0] + u * q(k * t.s.period() as i128);
        let l = t.l.as_ref().map_or(q(0), |l| l.representatives()[0] + u * q(j * l.period() as i128));
        let moved = t.shifted(&s, &l).unwrap();
        prop_assert_eq!(moved.shift_normal_form(), t.shift_normal_form());
    }

    #[test]
    fn octonion_norm_is_multiplicative(x in octonion(), y in octonion()) {
        prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn sampled_loop_realizations_pass(label in 0usize..6, seed in any::<u64>()) {
        let label = [
            LoopLabel::A(2),
            LoopLabel::B(2),
            LoopLabel::BTwisted(2),
            LoopLabel::CTwisted(2),
            LoopLabel::BC(2),
            LoopLabel::G2Twisted,
        ][label];
        let r = realize(&label, &QSubgroup::integers(), &Cocycle::One, &q(2), Some(JacobiMode::Sampled { count: 200, seed })).unwrap();
        prop_assert!(r.report.passed(), "{}: {}", label, r.report);
    }

    #[test]
    fn quotient_orders_of_inverted_primes(p in prop::sample::select(vec![2u64, 3, 5, 7]), inv in prop::sample::select(vec![2u64, 3, 5, 7]), n in 1u32..=3) {
        let g = parse_group(&format!("Zinv({inv})")).unwrap();
        let want = if p == inv { 1 } else { p.pow(n) };
        prop_assert_eq!(g.quotient_order(p, n).unwrap(), want);
    }
}
