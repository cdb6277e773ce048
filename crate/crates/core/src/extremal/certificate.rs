use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::algebra::factorial;

/// Which sufficient condition of the main theorem an instance meets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Clause {
    /// `(x-1) n >= (2x-1) k - x + 2`, `n >= 2k + 2`, `q >= (x-1)! 2^{x+2}`.
    A,
    /// `(x-1) n >= (2x-1) k - x + 1`, `n >= 2k + 1`, `q >= (x-1)! 2^{2x+1}`.
    B,
    /// `n >= 3k` or `n = k`.
    C,
    None,
}

impl Clause {
    pub fn label(self) -> &'static str {
        match self {
            Clause::A => "a",
            Clause::B => "b",
            Clause::C => "c",
            Clause::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCertificate {
    pub n: u64,
    pub k: u64,
    pub q: u64,
    pub clause: Clause,
    /// Witness `2 <= x <= k` for clauses a and b.
    pub x: Option<u64>,
    /// Every condition of the reported clause with its truth value; for
    /// [`Clause::None`] the conditions of clause c.
    pub conditions: Vec<(String, bool)>,
}

/// `(x-1)! 2^{x+2}`.
pub fn clause_a_threshold(x: u64) -> BigInt {
    factorial(x - 1) << (x + 2) as usize
}

/// `(x-1)! 2^{2x+1}`.
pub fn clause_b_threshold(x: u64) -> BigInt {
    factorial(x - 1) << (2 * x + 1) as usize
}

fn clause_conditions(clause: Clause, n: u64, k: u64, q: u64, x: u64) -> Vec<(String, bool)> {
    let (ni, ki, xi) = (n as i128, k as i128, x as i128);
    let (slack, gap, threshold) = match clause {
        Clause::A => (2, 2, clause_a_threshold(x)),
        Clause::B => (1, 1, clause_b_threshold(x)),
        _ => unreachable!(),
    };
    let lhs = (xi - 1) * ni;
    let rhs = (2 * xi - 1) * ki - xi + slack;
    alloc::vec![
        (format!("(x-1)n >= (2x-1)k - x + {slack}: {lhs} >= {rhs}"), lhs >= rhs),
        (format!("n >= 2k + {gap}: {n} >= {}", 2 * k + gap), n >= 2 * k + gap),
        (format!("q >= {threshold}"), BigInt::from(q) >= threshold),
    ]
}

/// The smallest `x` for which clause a (then b, at the same `x`) holds;
/// failing both, clause c; otherwise [`Clause::None`].
pub fn theorem_certificate(n: u64, k: u64, q: u64) -> TheoremCertificate {
    for x in 2..=k {
        for clause in [Clause::A, Clause::B] {
            let conditions = clause_conditions(clause, n, k, q, x);
            if conditions.iter().all(|(_, ok)| *ok) {
                return TheoremCertificate { n, k, q, clause, x: Some(x), conditions };
            }
        }
    }
    let conditions = alloc::vec![
        (format!("n >= 3k: {n} >= {}", 3 * k), n >= 3 * k),
        (format!("n = k: {n} = {k}"), n == k),
        (format!("q >= 2: {q}"), q >= 2),
    ];
    let c = (conditions[0].1 || conditions[1].1) && conditions[2].1;
    TheoremCertificate { n, k, q, clause: if c { Clause::C } else { Clause::None }, x: None, conditions }
}

/// One column of the two parameter tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub x: u64,
    /// Lower bound on `q` when `n >= 2k + 2`.
    pub clause_a_q: BigInt,
    /// Leading term of the bound on `n` in clause a, `(2x-1) k / (x-1)`.
    pub n_bound: String,
    /// Lower bound on `q` when `n = 2k + 1`.
    pub clause_b_q: BigInt,
    /// Largest `k` for which clause b applies at `n = 2k + 1`.
    pub k_bound: u64,
}

fn k_fraction(num: u64, den: u64) -> String {
    let g = num.gcd(&den);
    let (num, den) = (num / g, den / g);
    if den == 1 {
        format!("{num}k")
    } else {
        format!("{num}k/{den}")
    }
}

/// Largest `k` with `(x-1)(2k+1) >= (2x-1)k - x + 1`, found by scanning.
fn clause_b_k_bound(x: u64) -> u64 {
    let x = x as i64;
    (1..)
        .take_while(|&k: &i64| (x - 1) * (2 * k + 1) > (2 * x - 1) * k - x)
        .last()
        .unwrap_or(0) as u64
}

/// Rows for `x = 2..=6`.
pub fn table_rows() -> Vec<TableRow> {
    (2..=6)
        .map(|x| TableRow {
            x,
            clause_a_q: clause_a_threshold(x),
            n_bound: k_fraction(2 * x - 1, x - 1),
            clause_b_q: clause_b_threshold(x),
            k_bound: clause_b_k_bound(x),
        })
        .collect()
}

/// Whether `q` exceeds the clause-a threshold for `x`; used by the lemma checks.
pub(crate) fn exceeds_clause_a(q: u64, x: u64) -> bool {
    BigInt::from(q) > clause_a_threshold(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables() {
        let rows = table_rows();
        let a: Vec<BigInt> = rows.iter().map(|r| r.clause_a_q.clone()).collect();
        let b: Vec<BigInt> = rows.iter().map(|r| r.clause_b_q.clone()).collect();
        let n: Vec<&str> = rows.iter().map(|r| r.n_bound.as_str()).collect();
        let k: Vec<u64> = rows.iter().map(|r| r.k_bound).collect();
        assert_eq!(a, [16, 64, 384, 3072, 30720].map(BigInt::from));
        assert_eq!(b, [32, 256, 3072, 49152, 983040].map(BigInt::from));
        assert_eq!(n, ["3k", "5k/2", "7k/3", "9k/4", "11k/5"]);
        assert_eq!(k, [2, 4, 6, 8, 10]);
    }

    #[test]
    fn certificates() {
        for k in 2..=6 {
            let c = theorem_certificate(3 * k, k, 16);
            assert_eq!((c.clause, c.x), (Clause::A, Some(2)));
            assert_eq!(theorem_certificate(3 * k, k, 2).clause, Clause::C);
        }
        let c = theorem_certificate(9, 4, 256);
        assert_eq!((c.clause, c.x), (Clause::B, Some(3)));
        assert!(c.conditions.iter().all(|(_, ok)| *ok));
        assert_eq!(theorem_certificate(9, 4, 255).clause, Clause::None);
        assert_eq!(theorem_certificate(3, 3, 2).clause, Clause::C);
        assert_eq!(theorem_certificate(4, 2, 1000).clause, Clause::None);
    }

    #[test]
    fn monotone_in_q() {
        for k in 2..=5u64 {
            for n in k..=3 * k {
                let mut seen: Option<(Clause, Option<u64>)> = None;
                for q in 2..=1200u64 {
                    let c = theorem_certificate(n, k, q);
                    if let Some((clause, x)) = seen {
                        if matches!(clause, Clause::A | Clause::B) {
                            let held = clause_conditions(clause, n, k, q, x.unwrap());
                            assert!(held.iter().all(|(_, ok)| *ok), "{n} {k} {q}");
                        }
                    }
                    if matches!(c.clause, Clause::A | Clause::B) && seen.is_none() {
                        seen = Some((c.clause, c.x));
                    }
                }
            }
        }
    }
}
