//! Textual grammar for groups and reflection spaces.
//!
//! ```text
//! group  := "Z" | "Z*" rational | "Zloc(" prime ")" | "Zinv(" prime ")"
//!         | "trunc(" group "," depth ")" | "scaled(" group "," n ")"
//! space  := [k] "G" [ "+" ( rational | "{" rational ("," rational)* "}" ) ]
//! ```

use serde::{Deserialize, Serialize};

use super::{QSubgroup, ReflectionSpace};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};
use crate::text::Cursor;

pub fn parse_group(src: &str) -> Result<QSubgroup> {
    let mut c = Cursor::new(src);
    c.skip_ws();
    let g = group(&mut c)?;
    c.finish()?;
    Ok(g)
}

pub(crate) fn group(c: &mut Cursor<'_>) -> Result<QSubgroup> {
    let start = c.pos();
    let name = c.ident();
    let fail = |c: &Cursor<'_>, e: Error| match e {
        Error::Parse { .. } => e,
        other => Error::Parse {
            pos: start,
            expected: "valid group".into(),
            found: format!(
                "{other} near `{}`",
                c.rest().chars().take(12).collect::<String>()
            ),
        },
    };
    match name {
        "Z" => {
            if c.eat("*") {
                let g = c.rational()?;
                QSubgroup::cyclic(g).map_err(|e| fail(c, e))
            } else {
                Ok(QSubgroup::integers())
            }
        }
        "Zloc" | "Zinv" => {
            c.expect("(")?;
            let p = c.natural()?;
            c.expect(")")?;
            let r = if name == "Zloc" {
                QSubgroup::localization(p)
            } else {
                QSubgroup::prime_inverted(p)
            };
            r.map_err(|e| fail(c, e))
        }
        "trunc" => {
            c.expect("(")?;
            let base = group(c)?;
            c.expect(",")?;
            let d = c.natural()?;
            c.expect(")")?;
            let d = u32::try_from(d).map_err(|_| c.err("depth below 2^32"))?;
            QSubgroup::truncated(base, d).map_err(|e| fail(c, e))
        }
        "scaled" => {
            c.expect("(")?;
            let base = group(c)?;
            c.expect(",")?;
            let n = c.integer()?;
            c.expect(")")?;
            base.scale(n).map_err(|e| fail(c, e))
        }
        _ => Err(Error::Parse {
            pos: start,
            expected: "group (`Z`, `Z*q`, `Zloc(p)`, `Zinv(q)`, `trunc(..)`, `scaled(..)`)".into(),
            found: name_or_end(name, c),
        }),
    }
}

fn name_or_end(name: &str, c: &Cursor<'_>) -> String {
    if !name.is_empty() {
        name.to_string()
    } else if c.at_end() {
        "end of input".into()
    } else {
        c.rest().chars().take(12).collect()
    }
}

/// A reflection space before it is attached to a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionText {
    pub period: u64,
    pub reps: Vec<Q>,
}

impl ReflectionText {
    pub fn resolve(&self, g: &QSubgroup) -> Result<ReflectionSpace> {
        ReflectionSpace::new(g.clone(), self.period, &self.reps)
    }
}

impl std::fmt::Display for ReflectionText {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let k = if self.period == 1 {
            String::new()
        } else {
            self.period.to_string()
        };
        if self.reps.len() == 1 && self.reps[0] == Q::from_integer(0) {
            return write!(f, "{k}G");
        }
        let reps: Vec<String> = self.reps.iter().map(fmt_q).collect();
        write!(f, "{k}G+{{{}}}", reps.join(","))
    }
}

pub fn parse_reflection_text(src: &str) -> Result<ReflectionText> {
    let mut c = Cursor::new(src);
    c.skip_ws();
    let r = reflection_text(&mut c)?;
    c.finish()?;
    Ok(r)
}

pub(crate) fn reflection_text(c: &mut Cursor<'_>) -> Result<ReflectionText> {
    let period = if c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
        let k = c.natural()?;
        if k == 0 {
            return Err(c.err("positive period"));
        }
        k
    } else {
        1
    };
    c.expect("G")?;
    if !c.eat("+") {
        return Ok(ReflectionText {
            period,
            reps: vec![Q::from_integer(0)],
        });
    }
    let mut reps = Vec::new();
    if c.eat("{") {
        if c.eat("}") {
            return Ok(ReflectionText { period, reps });
        }
        loop {
            reps.push(c.rational()?);
            if c.eat("}") {
                break;
            }
            c.expect(",")?;
        }
    } else {
        reps.push(c.rational()?);
    }
    Ok(ReflectionText { period, reps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn groups_round_trip() {
        for s in [
            "Z",
            "Z*1/2",
            "Zloc(2)",
            "Zinv(3)",
            "trunc(Zinv(3),2)",
            "trunc(Zloc(5),1)",
        ] {
            let g = parse_group(s).unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert_eq!(parse_group("Z*3").unwrap(), QSubgroup::Cyclic(q(3)));
        assert_eq!(
            parse_group("scaled(Zinv(2),2)").unwrap(),
            QSubgroup::PrimeInverted(2)
        );
    }

    #[test]
    fn group_errors_carry_position() {
        match parse_group("Zinv(4)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 0),
            other => panic!("{other:?}"),
        }
        match parse_group("trunc(Zinv(3)") {
            Err(Error::Parse { pos, expected, .. }) => {
                assert_eq!(pos, 13);
                assert!(expected.contains(','));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_group("Q").is_err());
        assert!(parse_group("Z extra").is_err());
    }

    #[test]
    fn reflection_texts() {
        assert_eq!(
            parse_reflection_text("G").unwrap(),
            ReflectionText {
                period: 1,
                reps: vec![q(0)]
            }
        );
        assert_eq!(parse_reflection_text("2G").unwrap().period, 2);
        assert_eq!(
            parse_reflection_text("4G+{0,2}").unwrap(),
            ReflectionText {
                period: 4,
                reps: vec![q(0), q(2)]
            }
        );
        assert_eq!(parse_reflection_text("2G+1").unwrap().reps, vec![q(1)]);
        assert_eq!(
            parse_reflection_text("2G+{1/3}").unwrap().reps,
            vec![qf(1, 3)]
        );
        assert!(parse_reflection_text("0G").is_err());
        assert!(parse_reflection_text("2H").is_err());
        assert!(parse_reflection_text("2G+{1,").is_err());
    }

    #[test]
    fn resolve_against_group() {
        let z = QSubgroup::integers();
        let e = parse_reflection_text("2G+{1}")
            .unwrap()
            .resolve(&z)
            .unwrap();
        assert!(e.contains(&q(3)) && !e.contains(&q(2)));
        assert!(parse_reflection_text("2G+{1/2}")
            .unwrap()
            .resolve(&z)
            .is_err());
    }
}
