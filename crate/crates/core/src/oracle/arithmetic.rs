use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{GroupError, Result};

/// Binary-digit dominance: every 1-digit of `m` is a 1-digit of `n`.
pub fn preceq(m: u64, n: u64) -> bool {
    m & !n == 0
}

/// Strict dominance: [`preceq`] and `m ≠ n`.
pub fn prec(m: u64, n: u64) -> bool {
    m != n && preceq(m, n)
}

/// `n` with every factor 2 removed (`n_{2'}`).
pub fn odd_part(n: u64) -> u64 {
    assert!(n > 0, "odd part of zero");
    n >> n.trailing_zeros()
}

pub fn is_power_of_two(n: u64) -> bool {
    n.is_power_of_two()
}

/// Shape of `n` relevant to the symplectic classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymplForm {
    PowerOfTwo,
    /// `2^w (2^{2k} + 1)` with `k ≥ 1`.
    FermatTimesPower,
    Neither,
}

pub fn sympl_form_check(n: u64) -> SymplForm {
    assert!(n > 0, "n must be positive");
    let m = odd_part(n);
    if m == 1 {
        return SymplForm::PowerOfTwo;
    }
    // m = 4^k + 1 with k ≥ 1
    let e = m - 1;
    if e.is_power_of_two() && e.trailing_zeros().is_multiple_of(2) {
        SymplForm::FermatTimesPower
    } else {
        SymplForm::Neither
    }
}

fn one_positions(n: u64) -> Vec<u32> {
    (0..64).filter(|&i| n >> i & 1 == 1).collect()
}

/// A proper sub-sum `m ≺ n` of binary digits of `n` with `3 | m`: two digits
/// in positions of opposite parity or, failing that, three in positions of
/// equal parity. The first proper choice in lexicographic order of positions
/// is returned.
///
/// When the only such choice uses every digit of `n` (exactly two digits of
/// opposite parity, or exactly three of equal parity) no proper `m` exists and
/// `n` is flagged with an error. Such `n` are multiples of 3.
pub fn simpl_nonpron_digits(n: u64) -> Result<u64> {
    if n == 0 || sympl_form_check(n) != SymplForm::Neither {
        return Err(GroupError::Precondition(format!(
            "{n} is of the form 2^w or 2^w(2^2k+1)"
        )));
    }
    let pos = one_positions(n);
    for (i, &a) in pos.iter().enumerate() {
        for &b in &pos[i + 1..] {
            let m = (1u64 << a) + (1u64 << b);
            if (a + b) % 2 == 1 && m != n {
                return Ok(m);
            }
        }
    }
    for (i, &a) in pos.iter().enumerate() {
        for (j, &b) in pos.iter().enumerate().skip(i + 1) {
            for &c in &pos[j + 1..] {
                let m = (1u64 << a) + (1u64 << b) + (1u64 << c);
                if a % 2 == b % 2 && b % 2 == c % 2 && m != n {
                    return Ok(m);
                }
            }
        }
    }
    Err(GroupError::Unsupported(format!(
        "{n}: the digit recipe selects every digit, so no proper m exists"
    )))
}

/// `gcd(a_order, m)` is a power of 2 for every positive `m` with `m ≺ n_i`
/// (`strict`) or `m ⪯ n_i` (non-strict) for some `i`.
pub fn awrsn_condition(a_order: u64, n_list: &[u64], strict: bool) -> bool {
    n_list.iter().all(|&n| {
        // enumerate the nonzero submasks of n
        let mut m = n;
        while m > 0 {
            if (!strict || m != n) && !a_order.gcd(&m).is_power_of_two() {
                return false;
            }
            m = (m - 1) & n;
        }
        true
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dominance_examples() {
        assert!(preceq(5, 7));
        assert!(!preceq(3, 5));
        assert!(preceq(0, 0));
        for n in 0..=10_000 {
            assert!(!prec(n, n));
        }
    }

    #[test]
    fn odd_parts() {
        assert_eq!(odd_part(48), 3);
        assert_eq!(odd_part(7), 7);
        for k in 0..20 {
            assert_eq!(odd_part(1 << k), 1);
        }
    }

    /// Direct search over w and k.
    fn brute_form(n: u64) -> SymplForm {
        for w in 0..20 {
            if n == 1 << w {
                return SymplForm::PowerOfTwo;
            }
            for k in 1..8 {
                if n == (1u64 << w) * ((1u64 << (2 * k)) + 1) {
                    return SymplForm::FermatTimesPower;
                }
            }
        }
        SymplForm::Neither
    }

    #[test]
    fn form_examples_and_brute_force() {
        assert_eq!(sympl_form_check(4), SymplForm::PowerOfTwo);
        assert_eq!(sympl_form_check(10), SymplForm::FermatTimesPower);
        assert_eq!(sympl_form_check(7), SymplForm::Neither);
        assert_eq!(sympl_form_check(1), SymplForm::PowerOfTwo);
        for n in 1..=10_000 {
            assert_eq!(sympl_form_check(n), brute_form(n), "{n}");
        }
    }

    #[test]
    fn digit_recipe() {
        assert_eq!(simpl_nonpron_digits(7).unwrap(), 3);
        assert!(simpl_nonpron_digits(21).is_err());
        assert!(simpl_nonpron_digits(3).is_err());
        assert!(matches!(
            simpl_nonpron_digits(4),
            Err(GroupError::Precondition(_))
        ));
        let mut flagged = 0;
        for n in 1..=10_000u64 {
            if sympl_form_check(n) != SymplForm::Neither {
                continue;
            }
            match simpl_nonpron_digits(n) {
                Ok(m) => {
                    assert!(prec(m, n), "{n}");
                    assert_eq!(m % 3, 0, "{n}");
                }
                Err(_) => {
                    flagged += 1;
                    assert_eq!(n % 3, 0, "flagged {n} is a multiple of 3");
                    assert!(matches!(n.count_ones(), 2 | 3));
                }
            }
        }
        assert!(flagged > 0);
    }

    /// Brute force over all m up to n.
    fn awrsn_brute(a: u64, ns: &[u64], strict: bool) -> bool {
        ns.iter().all(|&n| {
            (1..=n)
                .filter(|&m| if strict { prec(m, n) } else { preceq(m, n) })
                .all(|m| a.gcd(&m).is_power_of_two())
        })
    }

    #[test]
    fn awrsn_examples() {
        assert!(awrsn_condition(3, &[2], true));
        assert!(awrsn_condition(3, &[2], false));
        assert!(awrsn_condition(3, &[3], true));
        assert!(!awrsn_condition(3, &[3], false));
        assert!(awrsn_condition(6, &[4], false));
    }

    proptest! {
        #[test]
        fn awrsn_matches_brute_force(a in 1u64..40, ns in prop::collection::vec(1u64..200, 1..4), strict: bool) {
            prop_assert_eq!(awrsn_condition(a, &ns, strict), awrsn_brute(a, &ns, strict));
        }

        #[test]
        fn prec_is_submask(m in 0u64..5000, n in 0u64..5000) {
            let digits = (0..13).all(|i| (m >> i & 1) <= (n >> i & 1));
            prop_assert_eq!(preceq(m, n), digits);
        }
    }
}
