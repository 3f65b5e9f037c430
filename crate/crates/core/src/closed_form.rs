//! Combinatorial formulas for the pinched sets, the cofibers and the loop
//! space homology, evaluated without building any simplicial set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::BettiTable;

/// `C(m, k)`, zero when `m < 0`, `k < 0` or `k > m`.
pub fn binom(m: i64, k: i64) -> u64 {
    if m < 0 || k < 0 || k > m {
        return 0;
    }
    let k = k.min(m - k) as u128;
    let m = m as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (m - i) / (i + 1);
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// `c_{λ,μ} = C(I+J, J) · C(s-I-J-1, J-1)` for `dim λ = I`, `dim μ = J`.
///
/// Counts the compositions of `s` whose parts are `I` ones and `J` parts
/// at least 2, in every order.
pub fn c_coeff(dim_lambda: usize, dim_mu: usize, s: usize) -> u64 {
    let (i, j, s) = (dim_lambda as i64, dim_mu as i64, s as i64);
    binom(i + j, j) * binom(s - i - j - 1, j - 1)
}

/// Reduced Betti numbers of the orbit space `Q` and of the fixed set `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiInput {
    pub q: BettiTable,
    pub a: BettiTable,
}

impl BettiInput {
    pub fn new(q: BettiTable, a: BettiTable) -> Self {
        BettiInput { q, a }
    }

    /// Orbit space `S²` with fixed circle.
    pub fn hemisphere_example(max_dim: usize) -> Self {
        BettiInput {
            q: BettiTable::sphere(2, max_dim),
            a: BettiTable::sphere(1, max_dim),
        }
    }
}

/// `w[d]` = sum over multi-indices `ν` with `k` positive entries and `|ν| = d`
/// of `Π b_{ν_i}`, for `d ≤ max_weight`.
fn multi_index_weights(b: &BettiTable, k: usize, max_weight: usize) -> Vec<u64> {
    let mut w = vec![0u64; max_weight + 1];
    w[0] = 1;
    for _ in 0..k {
        let mut next = vec![0u64; max_weight + 1];
        for (d, &x) in w.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for e in 1..=max_weight - d {
                let be = b.values().get(e).copied().unwrap_or(0);
                next[d + e] += x * be;
            }
        }
        w = next;
    }
    w
}

/// `b̃_t(Δ̃_s)` as a sum over pairs of multi-indices `(λ, μ)` with
/// `|λ| + |μ| = t - s + dim λ + dim μ + 1` and `2 ≤ dim λ + dim μ + 1 ≤ s`,
/// weighted by `c_{λ,μ} b_λ(Q) b_μ(A)`.
///
/// Multi-index entries are positive, so `b_0` never enters. The largest
/// entry that can occur is `t - s + 2`; both tables must certify it.
pub fn betti_pinched_formula(inp: &BettiInput, s: usize, t: usize) -> Result<u64> {
    if s < 2 {
        return Err(Error::Precondition(format!("the formula needs s >= 2, got s = {s}")));
    }
    if t + 2 < s {
        return Ok(0);
    }
    let needed = t + 2 - s;
    for table in [&inp.q, &inp.a] {
        if table.max_dim() < needed {
            return Err(Error::OutsideCertifiedRange {
                dim: needed,
                max: table.max_dim(),
            });
        }
    }
    let mut total = 0;
    for dim_sum in 1..s {
        let weight = t + dim_sum + 1;
        if weight < s {
            continue;
        }
        let weight = weight - s;
        for j in 1..=dim_sum {
            let i = dim_sum - j;
            let c = c_coeff(i, j, s);
            if c == 0 {
                continue;
            }
            let wq = multi_index_weights(&inp.q, i, weight);
            let wa = multi_index_weights(&inp.a, j, weight);
            let conv: u64 = (0..=weight).map(|d| wq[d] * wa[weight - d]).sum();
            total += c * conv;
        }
    }
    Ok(total)
}

/// `b̃_n(Δ̃_s)` for `Q = S²`, `A = S¹`:
/// `Σ_{J=1}^{2s-3} C(n-s+1+J, J) C(2s-n-J-2, J-1)`.
pub fn betti_pinched_example(s: usize, n: usize) -> u64 {
    let (s, n) = (s as i64, n as i64);
    (1..=2 * s - 3)
        .map(|j| binom(n - s + 1 + j, j) * binom(2 * s - n - j - 2, j - 1))
        .sum()
}

/// Betti numbers of `Q^{∧s}/Δ̃_s` when the inclusion `Δ̃_s → Q^{∧s}` is zero
/// on homology for degree reasons: no degree carries classes on both sides.
/// Then `b_n = b_n(Q^{∧s}) + b_{n-1}(Δ̃_s)`.
pub fn quotient_betti_split(ambient: &BettiTable, pinched: &BettiTable) -> Result<BettiTable> {
    let max = ambient.max_dim().min(pinched.max_dim() + 1);
    let mut values = Vec::with_capacity(max + 1);
    for n in 0..=max {
        let amb = ambient.get(n)?;
        if amb != 0 && pinched.values().get(n).copied().unwrap_or(0) != 0 {
            return Err(Error::Precondition(format!(
                "the ambient power and the pinched set both have homology in degree {n}"
            )));
        }
        let below = if n == 0 { 0 } else { pinched.get(n - 1)? };
        values.push(amb + below);
    }
    Ok(BettiTable::from_values(values))
}

/// `S^{2s}/Δ̃_s`: `F₂` in degree `2s`, zero in degree `2s - 1` and above `2s`,
/// and `b_{n-1}(Δ̃_s)` for `n ≤ 2s - 2`.
pub fn quotient_betti_concentrated(s: usize, ambient: &BettiTable, pinched: &BettiTable) -> Result<BettiTable> {
    if ambient.values() != BettiTable::sphere(2 * s, ambient.max_dim()).values() {
        return Err(Error::Precondition(format!(
            "the ambient smash power is not concentrated in degree {}",
            2 * s
        )));
    }
    if let Some((n, _)) = pinched.support().find(|&(n, _)| n + 3 > 2 * s) {
        return Err(Error::Precondition(format!(
            "pinched set has homology in degree {n} > 2s - 3"
        )));
    }
    quotient_betti_split(ambient, pinched)
}

/// `b̃_n` of the loop space as `Σ_s b_n(Q^{∧s}/Δ̃_s)`, with `quotients[k]`
/// the table for `s = k + 1`.
///
/// The sum stops at `s = n`. That cutoff holds when `Q` and `A` are
/// connected: then `Δ̃_s` has no reduced homology below `s - 1` and the
/// cofiber none below `s`. The caller is responsible for connectivity.
pub fn loop_betti(quotients: &[BettiTable], n: usize) -> Result<u64> {
    if quotients.len() < n {
        return Err(Error::Precondition(format!(
            "degree {n} needs cofibers for s = 1..={n}, only {} supplied",
            quotients.len()
        )));
    }
    quotients[..n].iter().map(|q| q.get(n)).sum()
}

fn loop_betti_example_with(n: usize, wide_odd_bound: bool) -> Result<u64> {
    if n == 0 {
        return Err(Error::Precondition(
            "degree 0 is excluded: reduced b0 is 0 while the series starts at 1".into(),
        ));
    }
    let k = (n / 2) as i64;
    if n.is_multiple_of(2) {
        let mut total = 1;
        for r in k + 1..=2 * k {
            for j in 1..=2 * r - 3 {
                total += binom(2 * k - r + j, j) * binom(2 * r - 2 * k - j - 1, j - 1);
            }
        }
        Ok(total)
    } else {
        let mut total = 0;
        for r in k + 2..=2 * k + 1 {
            let top = if wide_odd_bound { 2 * r - 3 } else { r - k - 1 };
            for j in 1..=top {
                total += binom(2 * k - r + j + 1, j) * binom(2 * r - 2 * k - j - 2, j - 1);
            }
        }
        Ok(total)
    }
}

/// Reduced mod-2 Betti numbers of the loop space in the hemisphere example,
/// in closed form. The odd case uses the inner bound `J ≤ r - k - 1`.
pub fn loop_betti_example(n: usize) -> Result<u64> {
    loop_betti_example_with(n, false)
}

/// Same as [`loop_betti_example`] with the odd inner bound `J ≤ 2r - 3`.
pub fn loop_betti_example_wide(n: usize) -> Result<u64> {
    loop_betti_example_with(n, true)
}

/// Loop space Betti number of the hemisphere example, assembled from the
/// pinched-set formula and the concentrated cofiber case.
pub fn loop_betti_example_assembled(n: usize) -> Result<u64> {
    let quotients = (1..=n)
        .map(|s| {
            let pinched = BettiTable::from_values((0..=n).map(|t| if s < 2 { 0 } else { betti_pinched_example(s, t) }).collect());
            quotient_betti_concentrated(s, &BettiTable::sphere(2 * s, n + 1), &pinched)
        })
        .collect::<Result<Vec<_>>>()?;
    loop_betti(&quotients, n)
}

/// Power series coefficients of `numerator / denominator`, `denominator[0] = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceSeries {
    pub numerator: Vec<i64>,
    pub denominator: Vec<i64>,
    pub coeffs: Vec<i64>,
}

impl RecurrenceSeries {
    pub fn expand(numerator: Vec<i64>, denominator: Vec<i64>, n_max: usize) -> Result<Self> {
        if denominator.first() != Some(&1) {
            return Err(Error::Precondition("denominator must have constant term 1".into()));
        }
        let mut coeffs: Vec<i64> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut a = numerator.get(n).copied().unwrap_or(0);
            for (k, &d) in denominator.iter().enumerate().skip(1).take(n) {
                a -= d * coeffs[n - k];
            }
            coeffs.push(a);
        }
        Ok(RecurrenceSeries {
            numerator,
            denominator,
            coeffs,
        })
    }

    pub fn coeff(&self, n: usize) -> Option<i64> {
        self.coeffs.get(n).copied()
    }

    /// Whether `Σ_k denominator[k] a_{n-k} = 0` for every `n` past the numerator.
    pub fn satisfies_recurrence(&self) -> bool {
        let start = self.numerator.len().max(self.denominator.len() - 1);
        (start..self.coeffs.len()).all(|n| {
            self.denominator
                .iter()
                .enumerate()
                .map(|(k, &d)| d * self.coeffs[n - k])
                .sum::<i64>()
                == 0
        })
    }
}

/// Coefficients of `(1 - x)/(1 - x - 2x² + x³)` through `x^{n_max}`.
/// The conjectured loop space series is this minus 1.
pub fn poincare_coeffs(n_max: usize) -> RecurrenceSeries {
    RecurrenceSeries::expand(vec![1, -1], vec![1, -1, -2, 1], n_max).expect("constant term is 1")
}
