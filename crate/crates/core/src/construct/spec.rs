use serde::{Deserialize, Serialize};

/// A group construction.
///
/// JSON uses external tagging with snake_case names, e.g.
/// `{"wreath":{"base":{"cyclic":3},"top_degree":3}}` or
/// `{"product":[{"frobenius73":{}},{"frobenius73":{}}]}`. Unknown keys are rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Sym(usize),
    Alt(usize),
    Cyclic(usize),
    /// Dihedral group of order `2n`, on `n` points for `n >= 3`.
    Dihedral(usize),
    ElemAbelian {
        p: u64,
        k: u32,
    },
    Quaternion8 {},
    Frobenius73 {},
    Sl2 {
        q: u64,
    },
    /// `Sp_{2n}(q)` on nonzero vectors.
    Sp {
        n: usize,
        q: u64,
    },
    /// `PSL_2(q)` on the projective line.
    Psl2 {
        q: u64,
    },
    /// `PSp_{2n}(q)` on projective points.
    Psp {
        n: usize,
        q: u64,
    },
    /// `GL_d(q)` on nonzero vectors.
    Gl {
        d: usize,
        q: u64,
    },
    Product(Vec<GroupSpec>),
    Wreath {
        base: Box<GroupSpec>,
        top_degree: usize,
    },
    Regular(Box<GroupSpec>),
    Quotient {
        group: Box<GroupSpec>,
        radical: Radical,
    },
}

/// The normal subgroup factored out by [`GroupSpec::Quotient`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Radical {
    /// `O_p`, e.g. `{"p":2}`.
    P(u64),
    /// `O_{2'}`, the largest normal subgroup of odd order.
    Odd,
    Center,
}

impl GroupSpec {
    pub fn from_json(s: &str) -> crate::error::Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::error::GroupError::InvalidInput(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("specs always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn documented_examples_parse() {
        let w = GroupSpec::from_json(r#"{"wreath":{"base":{"cyclic":3},"top_degree":3}}"#).unwrap();
        assert_eq!(
            w,
            GroupSpec::Wreath {
                base: Box::new(GroupSpec::Cyclic(3)),
                top_degree: 3
            }
        );
        let p =
            GroupSpec::from_json(r#"{"product":[{"frobenius73":{}},{"frobenius73":{}}]}"#).unwrap();
        assert_eq!(
            p.to_json(),
            r#"{"product":[{"frobenius73":{}},{"frobenius73":{}}]}"#
        );
        let q =
            GroupSpec::from_json(r#"{"quotient":{"group":{"sl2":{"q":3}},"radical":"center"}}"#)
                .unwrap();
        assert!(matches!(q, GroupSpec::Quotient { .. }));
        assert!(
            GroupSpec::from_json(r#"{"quotient":{"group":{"sym":4},"radical":{"p":2}}}"#).is_ok()
        );
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(GroupSpec::from_json(r#"{"sp":{"n":3,"q":3,"extra":1}}"#).is_err());
        assert!(GroupSpec::from_json(r#"{"nonsense":3}"#).is_err());
        assert!(GroupSpec::from_json(r#"{"sym":4,"alt":5}"#).is_err());
    }

    fn leaf() -> impl Strategy<Value = GroupSpec> {
        prop_oneof![
            (1usize..8).prop_map(GroupSpec::Sym),
            (1usize..8).prop_map(GroupSpec::Alt),
            (1usize..8).prop_map(GroupSpec::Cyclic),
            (1usize..8).prop_map(GroupSpec::Dihedral),
            (2u64..6, 1u32..4).prop_map(|(p, k)| GroupSpec::ElemAbelian { p, k }),
            Just(GroupSpec::Quaternion8 {}),
            Just(GroupSpec::Frobenius73 {}),
            (1usize..4, 2u64..8).prop_map(|(n, q)| GroupSpec::Sp { n, q }),
        ]
    }

    fn spec() -> impl Strategy<Value = GroupSpec> {
        leaf().prop_recursive(3, 12, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 1..3).prop_map(GroupSpec::Product),
                (inner.clone(), 1usize..4).prop_map(|(b, t)| GroupSpec::Wreath {
                    base: Box::new(b),
                    top_degree: t
                }),
                inner.clone().prop_map(|b| GroupSpec::Regular(Box::new(b))),
                inner.prop_map(|b| GroupSpec::Quotient {
                    group: Box::new(b),
                    radical: Radical::P(2)
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn json_round_trip(s in spec()) {
            let text = s.to_json();
            prop_assert_eq!(GroupSpec::from_json(&text).unwrap(), s);
        }
    }
}
