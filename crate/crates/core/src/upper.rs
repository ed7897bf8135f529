//! Membership in the upper bound `U_x`: the intersection of the initial
//! Laurent ring with the `n` Laurent rings of the one-step adjacent clusters.
//!
//! With `A_k = x'_k x_k = Π x_i^{[b_ik]_+} + Π x_i^{[-b_ik]_+}`, substitute
//! `x_k = A_k / x'_k` in `p = Σ_d c_d x_k^d`. The result is Laurent in the
//! adjacent cluster iff `A_k^{|d|}` divides `c_d` for every `d < 0`.

use serde::Serialize;

use crate::exchange::ExtendedMatrix;
use crate::laurent::{Exp, Laurent, LaurentError};

/// `A_k = x'_k · x_k`.
pub fn adjacency_divisor(matrix: &ExtendedMatrix, k: usize) -> Laurent {
    let (pos, neg) = matrix.exchange_monomials(k);
    Laurent::term(matrix.m(), pos, 1) + Laurent::term(matrix.m(), neg, 1)
}

/// Outcome of the check in direction `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionCheck {
    /// 1-based direction.
    pub k: usize,
    pub adjacency_divisor: Laurent,
    pub passes: bool,
    /// The most negative `d` whose coefficient fails; when several fail this
    /// is the smallest.
    pub failing_degree: Option<Exp>,
    /// On failure: `(q, r)` with `q · A + r = c_d / A^{j}` at the first
    /// power `j` where the division leaves a nonzero remainder `r`.
    pub witness: Option<(Laurent, Laurent)>,
}

/// Checks the direction-`k` condition. `k` is 0-based.
pub fn in_adjacent_ring(p: &Laurent, matrix: &ExtendedMatrix, k: usize) -> Result<DirectionCheck, LaurentError> {
    let a = adjacency_divisor(matrix, k);
    let coeffs = p.coefficients_in_variable(k)?;
    for (&d, c) in coeffs.range(..0) {
        let mut rest = c.clone();
        for _ in 0..d.unsigned_abs() {
            let (q, r) = rest.div_rem(&a)?;
            if !r.is_zero() {
                // Re-multiply: the witness must reassemble the dividend.
                debug_assert_eq!(q.checked_mul(&a)?.checked_add(&r)?, rest);
                return Ok(DirectionCheck {
                    k: k + 1,
                    adjacency_divisor: a,
                    passes: false,
                    failing_degree: Some(d),
                    witness: Some((q, r)),
                });
            }
            rest = q;
        }
    }
    Ok(DirectionCheck { k: k + 1, adjacency_divisor: a, passes: true, failing_degree: None, witness: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    /// Always true: the input is a Laurent polynomial in the initial cluster.
    pub is_laurent_initial: bool,
    pub per_direction: Vec<DirectionCheck>,
    pub verdict: bool,
    pub coprime: bool,
    pub full_rank: bool,
}

impl MembershipReport {
    /// Full rank implies total coprimality, under which `U = U_x`.
    pub fn upper_equals_bound(&self) -> bool {
        self.full_rank
    }

    /// Shape:
    /// `{"verdict":bool,"is_laurent_initial":bool,"coprime":bool,
    ///   "full_rank":bool,"upper_equals_bound":bool,"directions":[{"k":1,
    ///   "divisor":"..","passes":bool,"failing_degree":int|null,
    ///   "remainder":".."|null}]}`
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Dir {
            k: usize,
            divisor: String,
            passes: bool,
            failing_degree: Option<Exp>,
            remainder: Option<String>,
        }
        #[derive(Serialize)]
        struct Report {
            verdict: bool,
            is_laurent_initial: bool,
            coprime: bool,
            full_rank: bool,
            upper_equals_bound: bool,
            directions: Vec<Dir>,
        }
        let r = Report {
            verdict: self.verdict,
            is_laurent_initial: self.is_laurent_initial,
            coprime: self.coprime,
            full_rank: self.full_rank,
            upper_equals_bound: self.upper_equals_bound(),
            directions: self
                .per_direction
                .iter()
                .map(|d| Dir {
                    k: d.k,
                    divisor: d.adjacency_divisor.to_string(),
                    passes: d.passes,
                    failing_degree: d.failing_degree,
                    remainder: d.witness.as_ref().map(|(_, r)| r.to_string()),
                })
                .collect(),
        };
        serde_json::to_value(r).expect("report serializes")
    }
}

/// Runs every direction and assembles the report.
pub fn check_ux_membership(p: &Laurent, matrix: &ExtendedMatrix) -> Result<MembershipReport, LaurentError> {
    if p.nvars() != matrix.m() {
        return Err(LaurentError::DimensionMismatch { left: p.nvars(), right: matrix.m() });
    }
    let per_direction = (0..matrix.n()).map(|k| in_adjacent_ring(p, matrix, k)).collect::<Result<Vec<_>, _>>()?;
    let verdict = per_direction.iter().all(|d| d.passes);
    Ok(MembershipReport {
        is_laurent_initial: true,
        per_direction,
        verdict,
        coprime: matrix.is_coprime(),
        full_rank: matrix.is_full_rank(),
    })
}
