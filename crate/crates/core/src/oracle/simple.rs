use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::arithmetic::{odd_part, prec, sympl_form_check, SymplForm};
use crate::engine::prime_factors;
use crate::error::{GroupError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

pub const SPORADIC: [&str; 26] = [
    "M11", "M12", "M22", "M23", "M24", "J1", "J2", "J3", "J4", "HS", "McL", "Suz", "Co1", "Co2",
    "Co3", "He", "Fi22", "Fi23", "Fi24'", "HN", "Ly", "Th", "O'N", "Ru", "B", "M",
];

/// A non-abelian simple group named by family and parameters.
///
/// JSON: `{"family":"PSp","n":3,"q":3}`, `{"family":"E6eps","q":19,"eps":"+"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", deny_unknown_fields)]
pub enum SimpleGroupId {
    Alt {
        n: u64,
    },
    #[serde(rename = "PSL2")]
    Psl2 {
        q: u64,
    },
    /// `PSL_n(q)` for `+`, `PSU_n(q)` for `-`.
    #[serde(rename = "PSLeps")]
    PslEps {
        n: u64,
        q: u64,
        eps: Sign,
    },
    /// `PSp_{2n}(q)`.
    #[serde(rename = "PSp")]
    Psp {
        n: u64,
        q: u64,
    },
    #[serde(rename = "E6eps", alias = "E6")]
    E6Eps {
        q: u64,
        eps: Sign,
    },
    /// Any group of Lie type over a field of characteristic 2.
    #[serde(rename = "LieChar2")]
    LieChar2 {
        name: String,
        q: u64,
    },
    Sporadic {
        name: String,
    },
    /// `^2G_2(q)`, `q = 3^{2m+1}`, `m ≥ 1`.
    Ree {
        q: u64,
    },
}

/// `q = p^k` with `p` prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimePower {
    pub q: u64,
    pub p: u64,
    pub k: u32,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self> {
        match prime_factors(q).as_slice() {
            &[(p, k)] => Ok(PrimePower { q, p, k }),
            _ => Err(GroupError::InvalidInput(format!(
                "{q} is not a prime power"
            ))),
        }
    }

    fn odd(&self) -> bool {
        self.p != 2
    }
}

fn invalid(msg: String) -> GroupError {
    GroupError::InvalidInput(msg)
}

impl SimpleGroupId {
    pub fn from_json(s: &str) -> Result<Self> {
        let id: SimpleGroupId =
            serde_json::from_str(s).map_err(|e| GroupError::InvalidInput(e.to_string()))?;
        id.validate()?;
        Ok(id)
    }

    /// Checks the parameter domain, excluding the non-simple small cases.
    pub fn validate(&self) -> Result<()> {
        match self {
            SimpleGroupId::Alt { n } if *n < 5 => Err(invalid(format!("Alt({n}) is not simple"))),
            SimpleGroupId::Alt { .. } => Ok(()),
            SimpleGroupId::Psl2 { q } => {
                PrimePower::new(*q)?;
                if *q < 4 {
                    return Err(invalid(format!("PSL2({q}) is not simple")));
                }
                Ok(())
            }
            SimpleGroupId::PslEps { n, q, eps } => {
                PrimePower::new(*q)?;
                let bad = match eps {
                    Sign::Plus => *n < 2 || (*n == 2 && *q < 4),
                    Sign::Minus => *n < 3 || (*n == 3 && *q == 2),
                };
                if bad {
                    return Err(invalid(format!("PSL{n}^{eps:?}({q}) is not simple")));
                }
                Ok(())
            }
            SimpleGroupId::Psp { n, q } => {
                PrimePower::new(*q)?;
                if *n == 0 || (*n == 1 && *q < 4) || (*n == 2 && *q == 2) {
                    return Err(invalid(format!("PSp{}({q}) is not simple", 2 * n)));
                }
                Ok(())
            }
            SimpleGroupId::E6Eps { q, .. } => PrimePower::new(*q).map(|_| ()),
            SimpleGroupId::LieChar2 { q, .. } => {
                let pp = PrimePower::new(*q)?;
                if pp.p != 2 {
                    return Err(invalid(format!("{q} is not a power of 2")));
                }
                Ok(())
            }
            SimpleGroupId::Sporadic { name } => {
                if SPORADIC.contains(&name.as_str()) || name == "F5" {
                    Ok(())
                } else {
                    Err(invalid(format!("unknown sporadic group {name}")))
                }
            }
            SimpleGroupId::Ree { q } => {
                let pp = PrimePower::new(*q)?;
                if pp.p != 3 || pp.k % 2 == 0 || pp.k < 3 {
                    return Err(invalid(format!(
                        "Ree groups need q = 3^(2m+1), m ≥ 1; got {q}"
                    )));
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    AllPronormal,
    HasNonpronormal,
    ConjecturedAll,
    ConjecturedNonpronormal,
    Open,
}

/// The published result a classification rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Citation {
    /// The list of simple groups whose odd-index subgroups are pronormal.
    OddIndexArray,
    /// `PSp_{6n}(q)`, `q ≡ ±3 (mod 8)`, has a non-pronormal odd-index subgroup.
    Counterexample,
    /// The complete answer for `PSp_{2n}(q)`.
    PronormalSympl,
    /// `PSp_{2n}(q)` with `n` of neither special form.
    SimplNonPron,
    /// The complete answer for `E_6^ε(q)`.
    E6,
    /// The open conjecture for `PSL_n^ε(q)`.
    Conjecture2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationStatus {
    pub status: Classification,
    pub citation: Citation,
}

fn status(status: Classification, citation: Citation) -> ClassificationStatus {
    ClassificationStatus { status, citation }
}

fn plus_minus_3_mod_8(q: u64) -> bool {
    matches!(q % 8, 3 | 5)
}

/// `q - ε`, as a positive integer.
fn q_minus(q: u64, eps: Sign) -> u64 {
    (q as i64 - eps.value()) as u64
}

/// Whether odd-index subgroups of the simple group are pronormal, according
/// to the classification results for each family.
pub fn classification_oracle(id: &SimpleGroupId) -> Result<ClassificationStatus> {
    id.validate()?;
    use Citation::*;
    use Classification::*;
    Ok(match id {
        SimpleGroupId::Alt { .. }
        | SimpleGroupId::Sporadic { .. }
        | SimpleGroupId::LieChar2 { .. }
        | SimpleGroupId::Ree { .. }
        | SimpleGroupId::Psl2 { .. } => status(AllPronormal, OddIndexArray),
        SimpleGroupId::PslEps { n, q, eps } => {
            if n.is_power_of_two() || q % 2 == 0 {
                status(AllPronormal, OddIndexArray)
            } else {
                let q2 = if *eps == Sign::Plus { q * q } else { 1 };
                let bound = q2 * q_minus(*q, *eps);
                let holds = (1..*n)
                    .filter(|&m| prec(m, *n))
                    .all(|m| m.gcd(&bound).is_power_of_two());
                if holds {
                    status(ConjecturedAll, Conjecture2)
                } else {
                    status(ConjecturedNonpronormal, Conjecture2)
                }
            }
        }
        SimpleGroupId::Psp { n, q } => {
            if *n == 1 || q % 2 == 0 {
                status(AllPronormal, OddIndexArray)
            } else if !plus_minus_3_mod_8(*q) || sympl_form_check(*n) != SymplForm::Neither {
                status(AllPronormal, PronormalSympl)
            } else if n % 3 == 0 {
                status(HasNonpronormal, Counterexample)
            } else {
                status(HasNonpronormal, SimplNonPron)
            }
        }
        SimpleGroupId::E6Eps { q, eps } => {
            let pp = PrimePower::new(*q)?;
            let eighteen = q_minus(*q, *eps).is_multiple_of(18);
            let field = pp.odd() && *eps == Sign::Plus && !pp.k.is_power_of_two();
            if eighteen || field {
                status(HasNonpronormal, E6)
            } else {
                status(AllPronormal, E6)
            }
        }
    })
}

/// Predicted `|N_G(S):S|` for a Sylow 2-subgroup `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizerPrediction {
    /// `None` when the index depends on data not carried by the id.
    pub index: Option<u64>,
    pub structure: String,
}

fn prediction(index: u64, structure: impl Into<String>) -> NormalizerPrediction {
    NormalizerPrediction {
        index: Some(index),
        structure: structure.into(),
    }
}

/// `((q-ε)_{2'})^{t-2} · (q-ε)_{2'} / (q-ε, n)_{2'}` for `n` with `t ≥ 2`
/// binary digits, all in positive positions; 1 otherwise.
fn linear_odd_centralizer(n: u64, q: u64, eps: Sign) -> u64 {
    let t = n.count_ones();
    if n % 2 == 1 || t < 2 {
        return 1;
    }
    let c = odd_part(q_minus(q, eps));
    let last = c / odd_part(q_minus(q, eps).gcd(&n));
    c.pow(t - 2) * last
}

pub fn sylow2_normalizer_prediction(id: &SimpleGroupId) -> Result<NormalizerPrediction> {
    id.validate()?;
    Ok(match id {
        SimpleGroupId::Alt { n } => {
            if *n == 5 {
                prediction(3, "Alt(4), as PSL2(4)")
            } else {
                prediction(1, "self-normalizing")
            }
        }
        SimpleGroupId::Psl2 { q } => psl2_prediction(*q),
        SimpleGroupId::PslEps { n, q, eps } => {
            if *n == 2 {
                psl2_prediction(*q)
            } else if q % 2 == 0 {
                NormalizerPrediction {
                    index: None,
                    structure: "Borel subgroup".into(),
                }
            } else {
                let c = linear_odd_centralizer(*n, *q, *eps);
                if c == 1 {
                    prediction(1, "self-normalizing")
                } else {
                    prediction(c, "S times cyclic factors")
                }
            }
        }
        SimpleGroupId::Psp { n, q } => {
            if *n == 1 {
                psl2_prediction(*q)
            } else if q % 2 == 0 {
                prediction((q - 1).pow(*n as u32), "Borel subgroup")
            } else if plus_minus_3_mod_8(*q) {
                let t = n.count_ones();
                prediction(3u64.pow(t), format!("elementary abelian 3^{t}"))
            } else {
                prediction(1, "self-normalizing")
            }
        }
        SimpleGroupId::E6Eps { q, eps } => {
            if q % 2 == 0 {
                NormalizerPrediction {
                    index: None,
                    structure: "Borel subgroup".into(),
                }
            } else {
                let d = q_minus(*q, *eps);
                let c = odd_part(d) / d.gcd(&3);
                if c == 1 {
                    prediction(1, "self-normalizing")
                } else {
                    prediction(c, "cyclic")
                }
            }
        }
        SimpleGroupId::LieChar2 { .. } => NormalizerPrediction {
            index: None,
            structure: "Borel subgroup".into(),
        },
        SimpleGroupId::Sporadic { name } => match name.as_str() {
            "J2" | "J3" | "Suz" | "HN" | "F5" => prediction(3, "index 3"),
            "J1" => prediction(21, "2^3:(7:3)"),
            _ => prediction(1, "self-normalizing"),
        },
        SimpleGroupId::Ree { .. } => prediction(21, "2^3:(7:3)"),
    })
}

fn psl2_prediction(q: u64) -> NormalizerPrediction {
    if q.is_multiple_of(2) {
        prediction(q - 1, "Borel subgroup")
    } else if plus_minus_3_mod_8(q) {
        prediction(3, "Alt(4)")
    } else {
        prediction(1, "self-normalizing")
    }
}

/// Predicted order of `O(C_G(S))`, the largest odd-order normal subgroup of
/// the centralizer of a Sylow 2-subgroup.
pub fn ocgs_prediction(id: &SimpleGroupId) -> Result<u64> {
    id.validate()?;
    Ok(match id {
        SimpleGroupId::E6Eps { q, eps } if q % 2 == 1 => {
            let d = q_minus(*q, *eps);
            odd_part(d) / d.gcd(&3)
        }
        SimpleGroupId::PslEps { n, q, eps } if q % 2 == 1 && *n >= 3 => {
            linear_odd_centralizer(*n, *q, *eps)
        }
        _ => 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psp(n: u64, q: u64) -> SimpleGroupId {
        SimpleGroupId::Psp { n, q }
    }

    #[test]
    fn json_shape() {
        let id = SimpleGroupId::from_json(r#"{"family":"PSp","n":3,"q":3}"#).unwrap();
        assert_eq!(id, psp(3, 3));
        let e = SimpleGroupId::from_json(r#"{"family":"E6eps","q":19,"eps":"+"}"#).unwrap();
        assert_eq!(
            e,
            SimpleGroupId::E6Eps {
                q: 19,
                eps: Sign::Plus
            }
        );
        assert!(SimpleGroupId::from_json(r#"{"family":"PSL2","q":3}"#).is_err());
        assert!(SimpleGroupId::from_json(r#"{"family":"PSp","n":2,"q":6}"#).is_err());
        assert!(SimpleGroupId::from_json(r#"{"family":"Nope"}"#).is_err());
    }

    #[test]
    fn classification_spot_values() {
        use Classification::*;
        let c = |id| classification_oracle(&id).unwrap();
        assert_eq!(
            c(psp(3, 3)),
            status(HasNonpronormal, Citation::Counterexample)
        );
        assert_eq!(c(psp(2, 5)).status, AllPronormal);
        assert_eq!(
            c(psp(10, 3)),
            status(AllPronormal, Citation::PronormalSympl)
        );
        assert_eq!(
            c(psp(7, 3)),
            status(HasNonpronormal, Citation::SimplNonPron)
        );
        let e6 = |q, eps| c(SimpleGroupId::E6Eps { q, eps });
        assert_eq!(e6(19, Sign::Plus), status(HasNonpronormal, Citation::E6));
        assert_eq!(e6(17, Sign::Minus), status(HasNonpronormal, Citation::E6));
        assert_eq!(e6(5, Sign::Plus).status, AllPronormal);
        // odd p, ε = +, k = 3 is not a power of 2
        assert_eq!(e6(27, Sign::Plus).status, HasNonpronormal);
        assert_eq!(c(SimpleGroupId::Alt { n: 9 }).status, AllPronormal);
        let l = c(SimpleGroupId::PslEps {
            n: 3,
            q: 3,
            eps: Sign::Plus,
        });
        assert_eq!(l.citation, Citation::Conjecture2);
    }

    #[test]
    fn normalizer_spot_values() {
        let p = |id| sylow2_normalizer_prediction(&id).unwrap().index;
        assert_eq!(p(SimpleGroupId::Psl2 { q: 5 }), Some(3));
        assert_eq!(p(SimpleGroupId::Psl2 { q: 7 }), Some(1));
        assert_eq!(p(SimpleGroupId::Psl2 { q: 11 }), Some(3));
        assert_eq!(p(SimpleGroupId::Psl2 { q: 13 }), Some(3));
        assert_eq!(p(psp(2, 3)), Some(3));
        assert_eq!(p(psp(3, 3)), Some(9));
        assert_eq!(p(SimpleGroupId::Sporadic { name: "J1".into() }), Some(21));
    }

    #[test]
    fn odd_centralizer_values() {
        let o = |id| ocgs_prediction(&id).unwrap();
        assert_eq!(
            o(SimpleGroupId::PslEps {
                n: 3,
                q: 3,
                eps: Sign::Plus
            }),
            1
        );
        assert_eq!(o(psp(3, 3)), 1);
        // (19 - 1)_{2'} / (18, 3) = 9 / 3
        assert_eq!(
            o(SimpleGroupId::E6Eps {
                q: 19,
                eps: Sign::Plus
            }),
            3
        );
        // n = 6 = 4 + 2, q = 7, ε = -: (8)_{2'} = 1
        assert_eq!(
            o(SimpleGroupId::PslEps {
                n: 6,
                q: 7,
                eps: Sign::Minus
            }),
            1
        );
        // n = 6, q = 11, ε = +: (10)_{2'} = 5 and (10, 6)_{2'} = 1
        assert_eq!(
            o(SimpleGroupId::PslEps {
                n: 6,
                q: 11,
                eps: Sign::Plus
            }),
            5
        );
    }

    proptest::proptest! {
        #[test]
        fn symplectic_consistency(n in 2u64..300, qi in 0usize..8) {
            let q = [3u64, 5, 7, 9, 11, 13, 17, 19][qi];
            let s = classification_oracle(&psp(n, q)).unwrap().status;
            if !plus_minus_3_mod_8(q) {
                proptest::prop_assert_eq!(s, Classification::AllPronormal);
            } else if sympl_form_check(n) == SymplForm::Neither {
                proptest::prop_assert_eq!(s, Classification::HasNonpronormal);
            } else {
                proptest::prop_assert_eq!(s, Classification::AllPronormal);
            }
        }
    }
}
