use num::{Signed, Zero};

use crate::outcomes::RationalDistribution;
use crate::rational::{qi, Q};
use crate::sset::SimplexRef;

use super::CtxError;

/// Labels of the four XOR contexts on the square and its relatives.
pub const XOR_LABELS: [&str; 4] = ["x0+y0", "x0+y1", "x1+y0", "x1+y1"];

/// The four double inequalities `0 <= Σ_i p_i - 2 p_k <= 2` on XOR marginals `p_i = p^0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChshReport {
    pub marginals: [Q; 4],
    /// `sums[k]` carries the minus sign on context `k`.
    pub sums: [Q; 4],
    pub violated: Vec<usize>,
    pub max: Q,
    pub min: Q,
}

impl ChshReport {
    pub fn holds(&self) -> bool {
        self.violated.is_empty()
    }
}

pub fn chsh_from_marginals(marginals: [Q; 4]) -> ChshReport {
    let total = marginals.iter().fold(Q::zero(), |a, b| a + b);
    let sums: [Q; 4] = std::array::from_fn(|k| &total - &marginals[k] * qi(2));
    let violated = (0..4).filter(|&k| sums[k].is_negative() || sums[k] > qi(2)).collect();
    let max = sums.iter().max().unwrap().clone();
    let min = sums.iter().min().unwrap().clone();
    ChshReport { marginals, sums, violated, max, min }
}

/// Reads the XOR marginals by edge label.
pub fn chsh_check(p: &RationalDistribution) -> Result<ChshReport, CtxError> {
    let x = p.space();
    let mut m: Vec<Q> = vec![];
    for label in XOR_LABELS {
        let e = x
            .find_label(label)
            .filter(|e| e.dim == 1)
            .ok_or_else(|| CtxError::MissingContext(label.to_string()))?;
        m.push(p.at(&SimplexRef::from(e)).get(&[0]).value().clone());
    }
    Ok(chsh_from_marginals([m[0].clone(), m[1].clone(), m[2].clone(), m[3].clone()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn pr_and_noisy_pr_values() {
        let r = chsh_from_marginals([qi(1), qi(1), qi(1), qi(0)]);
        assert_eq!(r.max, qi(3));
        assert_eq!(r.violated, vec![3]);
        let r = chsh_from_marginals([q(7, 8), q(7, 8), q(7, 8), q(1, 8)]);
        assert_eq!(r.max, q(5, 2));
        assert!(!r.holds());
        let r = chsh_from_marginals([q(1, 2), q(1, 2), q(1, 2), q(1, 2)]);
        assert!(r.holds());
    }
}
