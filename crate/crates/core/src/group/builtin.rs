//! Named permutation groups and the JSON group input format.

use serde::{Deserialize, Serialize};

use super::finite::FiniteGroup;
use crate::error::{Error, Result};

/// Group input file: generators are given as images of `1..=degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        if self.degree == 0 {
            return Err(Error::Input("degree must be positive".into()));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&x| {
                        x.checked_sub(1).ok_or_else(|| {
                            Error::InvalidPermutation(format!("{g:?}: images are 1-based"))
                        })
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::from_permutations(&self.name, self.degree, &gens)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("group file: {e}")))
    }
}

fn cycle(degree: usize, points: &[u32]) -> Vec<u32> {
    let mut perm: Vec<u32> = (0..degree as u32).collect();
    for (i, &a) in points.iter().enumerate() {
        perm[a as usize] = points[(i + 1) % points.len()];
    }
    perm
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    let gens = if n < 2 {
        vec![]
    } else {
        vec![cycle(n, &(0..n as u32).collect::<Vec<_>>()), cycle(n, &[0, 1])]
    };
    FiniteGroup::from_permutations(&format!("S{n}"), n.max(1), &gens)
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    let gens: Vec<Vec<u32>> = (2..n as u32).map(|i| cycle(n, &[0, 1, i])).collect();
    FiniteGroup::from_permutations(&format!("A{n}"), n.max(1), &gens)
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    let gens = if n < 2 { vec![] } else { vec![cycle(n, &(0..n as u32).collect::<Vec<_>>())] };
    FiniteGroup::from_permutations(&format!("C{n}"), n.max(1), &gens)
}

/// The dihedral group of order `order` acting on `order / 2` points.
pub fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 4 || !order.is_multiple_of(2) {
        return Err(Error::Input(format!("no dihedral group of order {order}")));
    }
    let n = order / 2;
    let rotation = cycle(n, &(0..n as u32).collect::<Vec<_>>());
    let reflection: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    let gens = if n == 2 {
        // Klein four on two letters does not exist; use the regular action.
        vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]]
    } else {
        vec![rotation, reflection]
    };
    FiniteGroup::from_permutations(&format!("D{order}"), if n == 2 { 4 } else { n }, &gens)
}

/// `C_p^k` acting on `p * k` points, one `p`-cycle per factor.
pub fn elementary_abelian(p: usize, k: usize) -> Result<FiniteGroup> {
    let degree = (p * k).max(1);
    let gens = (0..k)
        .map(|i| cycle(degree, &((i * p) as u32..((i + 1) * p) as u32).collect::<Vec<_>>()))
        .collect::<Vec<_>>();
    FiniteGroup::from_permutations(&format!("C{p}^{k}"), degree, &gens)
}

pub fn quaternion() -> Result<FiniteGroup> {
    let i = vec![2, 3, 1, 0, 6, 7, 5, 4];
    let j = vec![4, 5, 7, 6, 1, 0, 2, 3];
    FiniteGroup::from_permutations("Q8", 8, &[i, j])
}

/// Parses 1-based cycle notation such as `(1,2)(3,4)` or `(1 2 3)` into a
/// 0-based image list on `degree` points. `()` is the identity.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Vec<u32>> {
    let bad = |why: &str| Error::InvalidPermutation(format!("{text:?}: {why}"));
    let mut perm: Vec<u32> = (0..degree as u32).collect();
    let mut seen = vec![false; degree];
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let points = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(x) if (1..=degree).contains(&x) => Ok(x as u32 - 1),
                _ => Err(bad(&format!("point {t} is not in 1..={degree}"))),
            })
            .collect::<Result<Vec<u32>>>()?;
        for &x in &points {
            if std::mem::replace(&mut seen[x as usize], true) {
                return Err(bad("a point appears twice"));
            }
        }
        for (i, &a) in points.iter().enumerate() {
            perm[a as usize] = points[(i + 1) % points.len()];
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(perm)
}

/// Builtin names: `S3`, `S4`, `A4`, `D8`, `Q8`, `C_p^k` (also `Cp^k`),
/// `Cn`, `Sn` and `An` for n <= 6, `D2n`.
pub fn by_name(name: &str) -> Result<FiniteGroup> {
    let unknown = || Error::Input(format!("unknown builtin group {name:?}"));
    let number = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    if name == "Q8" {
        return quaternion();
    }
    let (head, rest) = name.split_at(name.chars().next().map_or(0, char::len_utf8));
    let mut group = match head {
        "S" => {
            let n = number(rest)?;
            if !(1..=6).contains(&n) {
                return Err(unknown());
            }
            symmetric(n)?
        }
        "A" => {
            let n = number(rest)?;
            if !(1..=6).contains(&n) {
                return Err(unknown());
            }
            alternating(n)?
        }
        "D" => dihedral(number(rest)?)?,
        "C" => {
            let rest = rest.strip_prefix('_').unwrap_or(rest);
            match rest.split_once('^') {
                Some((p, k)) => elementary_abelian(number(p)?, number(k)?)?,
                None => cyclic(number(rest)?)?,
            }
        }
        _ => return Err(unknown()),
    };
    group.set_name(name);
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_parsing() {
        assert_eq!(parse_cycles(4, "(1,2)(3,4)").unwrap(), vec![1, 0, 3, 2]);
        assert_eq!(parse_cycles(3, "(1 2 3)").unwrap(), vec![1, 2, 0]);
        assert_eq!(parse_cycles(3, "()").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_cycles(3, "").unwrap(), vec![0, 1, 2]);
        assert!(parse_cycles(3, "(1,4)").is_err());
        assert!(parse_cycles(3, "(1,2)(2,3)").is_err());
        assert!(parse_cycles(3, "1,2").is_err());
        let g = symmetric(4).unwrap();
        for x in g.elements() {
            assert_eq!(parse_cycles(4, &g.cycle_string(x)).unwrap(), g.permutation(x));
        }
    }

    #[test]
    fn orders_of_builtins() {
        for (name, order) in [
            ("S3", 6),
            ("S4", 24),
            ("A4", 12),
            ("D8", 8),
            ("Q8", 8),
            ("C_2^2", 4),
            ("C3^2", 9),
            ("C5", 5),
            ("S1", 1),
            ("A5", 60),
            ("D6", 6),
            ("D4", 4),
        ] {
            assert_eq!(by_name(name).unwrap().order(), order, "{name}");
        }
        assert!(by_name("X9").is_err());
        assert!(by_name("S9").is_err());
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion().unwrap();
        assert_eq!(q.elements().filter(|&g| q.element_order(g) == 2).count(), 1);
    }

    #[test]
    fn json_spec_is_one_based() {
        let spec = GroupSpec::from_json(r#"{"name":"S3","degree":3,"generators":[[2,3,1],[2,1,3]]}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 6);
        let bad = GroupSpec::from_json(r#"{"name":"x","degree":2,"generators":[[0,1]]}"#).unwrap();
        assert!(bad.build().is_err());
        let dup = GroupSpec::from_json(r#"{"name":"x","degree":2,"generators":[[1,1]]}"#).unwrap();
        assert!(matches!(dup.build(), Err(Error::InvalidPermutation(_))));
    }

    #[test]
    fn trivial_group_from_no_generators() {
        let g = FiniteGroup::from_permutations("1", 1, &[]).unwrap();
        assert_eq!(g.order(), 1);
    }
}
