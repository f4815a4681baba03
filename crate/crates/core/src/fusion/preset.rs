use std::fmt;
use std::str::FromStr;

use super::system::FusionSystem;
use crate::error::{Error, Result};
use crate::group::{parse_cycles, Subgroup};

/// A named collection of F-classes of subgroups of S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    /// Every p-subgroup, the trivial one included.
    AllP,
    Centric,
    CentricRadical,
    /// Nontrivial elementary abelian subgroups.
    ElementaryAbelian,
    /// The classes of explicitly listed subgroups, each given by generators
    /// in 1-based cycle notation.
    Explicit(Vec<Vec<String>>),
}

impl FromStr for Preset {
    type Err = Error;

    /// Accepts `all-p`, `centric`, `centric-radical`, `elementary-abelian`
    /// and `explicit:<gens>;<gens>;...` where generators of one subgroup
    /// are separated by `|`, e.g. `explicit:(1,2)(3,4)|(1,3)(2,4);(1,2,3,4)`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "all-p" => Ok(Preset::AllP),
            "centric" => Ok(Preset::Centric),
            "centric-radical" => Ok(Preset::CentricRadical),
            "elementary-abelian" => Ok(Preset::ElementaryAbelian),
            other => {
                let body = other
                    .strip_prefix("explicit:")
                    .ok_or_else(|| Error::Input(format!("unknown collection {other:?}")))?;
                let subgroups: Vec<Vec<String>> = body
                    .split(';')
                    .map(|h| h.split('|').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect())
                    .collect();
                if body.trim().is_empty() {
                    return Err(Error::Input("explicit collection lists no subgroups".into()));
                }
                Ok(Preset::Explicit(subgroups))
            }
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::AllP => f.write_str("all-p"),
            Preset::Centric => f.write_str("centric"),
            Preset::CentricRadical => f.write_str("centric-radical"),
            Preset::ElementaryAbelian => f.write_str("elementary-abelian"),
            Preset::Explicit(hs) => {
                let parts: Vec<String> = hs.iter().map(|g| g.join("|")).collect();
                write!(f, "explicit:{}", parts.join(";"))
            }
        }
    }
}

/// A union of F-classes with its closure properties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCollection {
    pub name: String,
    /// Class indices in increasing order.
    pub classes: Vec<usize>,
    /// Every subgroup of S containing a member is a member.
    pub overgroup_closed: bool,
    /// `PQ` is a member whenever it is a subgroup, for members `P`, `Q`.
    pub product_closed: bool,
}

impl ClassCollection {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

impl FusionSystem {
    pub fn collection(&self, preset: &Preset) -> Result<ClassCollection> {
        let mut classes = match preset {
            Preset::AllP => (0..self.classes().len()).collect(),
            Preset::Centric => self.centric_classes(),
            Preset::CentricRadical => self.centric_radical_classes(),
            Preset::ElementaryAbelian => self.elementary_abelian_classes(),
            Preset::Explicit(hs) => hs
                .iter()
                .map(|gens| {
                    let h = self.parse_subgroup(gens)?;
                    self.class_of_any(&h).ok_or_else(|| {
                        Error::Input(format!("{} is not a p-subgroup of the ambient group", h.describe(self.group())))
                    })
                })
                .collect::<Result<Vec<usize>>>()?,
        };
        classes.sort_unstable();
        classes.dedup();
        self.class_collection(&preset.to_string(), classes)
    }

    /// Closure flags for an arbitrary union of classes.
    pub fn class_collection(&self, name: &str, classes: Vec<usize>) -> Result<ClassCollection> {
        let product_closed = if classes.is_empty() {
            true
        } else {
            self.ambient_collection(&classes)?.is_product_closed(self.group())
        };
        Ok(ClassCollection {
            name: name.to_string(),
            overgroup_closed: self.is_overgroup_closed(&classes),
            product_closed,
            classes,
        })
    }

    /// The subgroup generated by permutations in 1-based cycle notation.
    pub fn parse_subgroup(&self, gens: &[String]) -> Result<Subgroup> {
        let g = self.group();
        let elems = gens
            .iter()
            .map(|t| {
                let perm = parse_cycles(g.degree(), t)?;
                g.find(&perm)
                    .ok_or_else(|| Error::InvalidPermutation(format!("{t} is not an element of {}", g.name())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(g.generate(&elems))
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fusion::fusion_system;
    use crate::group::builtin;
    use crate::linalg::Prime;

    #[test]
    fn presets_round_trip() {
        for s in ["all-p", "centric", "centric-radical", "elementary-abelian", "explicit:(1,2)(3,4)|(1,3)(2,4);(1,2,3,4)"] {
            assert_eq!(s.parse::<Preset>().unwrap().to_string(), s);
        }
        assert!("cyclic".parse::<Preset>().is_err());
        assert!("explicit:".parse::<Preset>().is_err());
    }

    #[test]
    fn s4_collections() {
        let g = Arc::new(builtin::symmetric(4).unwrap());
        let f = fusion_system(&g, Prime::new(2).unwrap()).unwrap();
        let all = f.collection(&Preset::AllP).unwrap();
        assert_eq!(all.len(), f.classes().len());
        assert!(all.overgroup_closed && all.product_closed);
        let c = f.collection(&Preset::Centric).unwrap();
        assert!(c.overgroup_closed);
        let e = f.collection(&"explicit:(1,2)(3,4)|(1,3)(2,4);(1,2,3,4)".parse().unwrap()).unwrap();
        assert_eq!(e.len(), 2);
        assert!(!e.overgroup_closed);
        assert!(f.collection(&"explicit:(1,2,3)".parse().unwrap()).is_err());
        assert!(f.collection(&"explicit:(1,5)".parse().unwrap()).is_err());
    }
}
