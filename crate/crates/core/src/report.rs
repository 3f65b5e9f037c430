//! Three-way comparison of pinched-set and loop space Betti numbers for a
//! simplicial set with involution.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::closed_form::{betti_pinched_formula, loop_betti, loop_betti_example, poincare_coeffs, quotient_betti_split, BettiInput};
use crate::error::{Error, Result};
use crate::homology::{reduced_betti, subset_betti, BettiTable, FactorTables};
use crate::pinched::{check_diagonal_hypothesis, mv_e1_from_tables, pinched_betti_brute, quotient_betti_brute};
use crate::simplicial::{find_section, orbit_space, section_map, FiniteSimplicialSet, Involution};

/// Whether a hypothesis holds, with a human-readable explanation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub holds: bool,
    pub detail: String,
}

impl Hypothesis {
    fn new(holds: bool, detail: impl Into<String>) -> Self {
        Hypothesis {
            holds,
            detail: detail.into(),
        }
    }
}

/// `b_t(Δ̃_s)` by each path. `None` means the path was not run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellRow {
    pub s: usize,
    pub t: usize,
    pub brute: Option<u64>,
    pub mv: Option<u64>,
    pub formula: Option<u64>,
    pub agree: bool,
}

/// `b_n` of the loop space by each path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopRow {
    pub n: usize,
    pub brute: Option<u64>,
    pub mv: Option<u64>,
    pub formula: Option<u64>,
    pub agree: bool,
}

/// Wall-clock seconds spent in each path.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timings {
    pub brute_secs: f64,
    pub mv_secs: f64,
    pub formula_secs: f64,
    pub total_secs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub fixture: String,
    pub truncation: usize,
    pub s_max: usize,
    pub t_max: usize,
    /// Existence of a section of the orbit projection; gates the loop rows.
    pub section: Hypothesis,
    /// Reduced diagonal of `A` homologous to zero; gates the MV and formula columns.
    pub diagonal: Hypothesis,
    /// `Q` and `A` connected; needed to cut the loop space sum at `s = n`.
    pub connected: Hypothesis,
    pub orbit_betti: BettiTable,
    pub fixed_betti: BettiTable,
    pub cells: Vec<CellRow>,
    pub loop_rows: Vec<LoopRow>,
    pub notes: Vec<String>,
    pub timings: Timings,
    pub all_agree: bool,
}

fn agree(values: &[Option<u64>]) -> bool {
    let mut present = values.iter().flatten();
    match present.next() {
        Some(first) => present.all(|v| v == first),
        None => true,
    }
}

/// Loop space Betti numbers for `n = 1..=n_max` from a pinched-set Betti
/// source, via `b_n(Q^{∧s}/Δ̃_s) = b_n(Q^{∧s}) + b_{n-1}(Δ̃_s)`.
fn loop_from_pinched(
    bq: &BettiTable,
    n_max: usize,
    pinched: impl Fn(usize, usize) -> Result<u64>,
) -> Result<Vec<u64>> {
    let mut quotients = Vec::with_capacity(n_max);
    let mut ambient = BettiTable::sphere(0, n_max);
    for s in 1..=n_max {
        ambient = ambient.smash(bq);
        let values = (0..n_max)
            .map(|t| if s < 2 { Ok(0) } else { pinched(s, t) })
            .collect::<Result<Vec<_>>>()?;
        let pinched_table = if values.is_empty() {
            BettiTable::zero(0)
        } else {
            BettiTable::from_values(values)
        };
        let q = quotient_betti_split(&ambient, &pinched_table)
            .map_err(|e| Error::Precondition(format!("s = {s}: {e}")))?;
        quotients.push(q);
    }
    (1..=n_max).map(|n| loop_betti(&quotients, n)).collect()
}

/// Fills the `(s, t)` grid for `2 ≤ s ≤ s_max`, `t ≤ t_max` and the loop
/// rows `n = 1..=t_max`. Brute-force loop rows stop at `n = s_max`.
pub fn verify(name: &str, x: Arc<FiniteSimplicialSet>, t: &Involution, s_max: usize, t_max: usize) -> Result<RunReport> {
    let start = Instant::now();
    let trunc = x.truncation();
    if t_max + 1 > trunc {
        return Err(Error::Truncation {
            requested: t_max + 1,
            available: trunc,
        });
    }
    let orbits = orbit_space(x.clone(), t)?;
    let q = orbits.quotient.clone();
    let a = orbits.fixed.clone();
    let mut notes = Vec::new();

    let section = match find_section(&x, t) {
        Some(y) => {
            let j = section_map(x.clone(), &orbits, &y)?;
            if j.then(&orbits.projection)?.is_identity() {
                Hypothesis::new(true, "the orbit projection has a section")
            } else {
                Hypothesis::new(false, "section candidate does not split the projection")
            }
        }
        None => Hypothesis::new(
            false,
            "no section of the orbit projection: no Y with Y ∪ Yt = X and Y ∩ Yt = X^G exists, so the loop space columns are disabled",
        ),
    };
    let diagonal = match check_diagonal_hypothesis(&q, &a) {
        Ok(()) => Hypothesis::new(true, "the reduced diagonal of A is mod 2 homologous to zero"),
        Err(e) => Hypothesis::new(false, format!("hypothesis not satisfied: {e}")),
    };
    let bq = reduced_betti(&q, t_max)?;
    let ba = subset_betti(&q, &a, t_max)?;
    let connected = if bq.get(0)? == 0 && ba.get(0)? == 0 {
        Hypothesis::new(true, "orbit space and fixed set are connected")
    } else {
        Hypothesis::new(false, "orbit space or fixed set is disconnected, the loop space sum has no finite cutoff")
    };
    let loops_enabled = section.holds && connected.holds;
    let brute_loop_max = if loops_enabled { s_max.min(t_max) } else { 0 };

    let brute_start = Instant::now();
    let tables = FactorTables::new(&q, &a, t_max + 1)?;
    let (pinched_brute, quotient_brute) = std::thread::scope(|scope| {
        let pinched: Vec<_> = (2..=s_max)
            .map(|s| {
                let tables = &tables;
                scope.spawn(move || pinched_betti_brute(tables, s, t_max))
            })
            .collect();
        let quotients: Vec<_> = (1..=brute_loop_max)
            .map(|s| {
                let tables = &tables;
                scope.spawn(move || quotient_betti_brute(tables, s, brute_loop_max))
            })
            .collect();
        let join = |h: std::thread::ScopedJoinHandle<'_, Result<BettiTable>>| h.join().expect("worker panicked");
        (
            pinched.into_iter().map(join).collect::<Result<Vec<_>>>(),
            quotients.into_iter().map(join).collect::<Result<Vec<_>>>(),
        )
    });
    let pinched_brute = pinched_brute?;
    let quotient_brute = quotient_brute?;
    let brute_secs = brute_start.elapsed().as_secs_f64();

    let mv_start = Instant::now();
    let mv = |s: usize, t: usize| mv_e1_from_tables(&bq, &ba, s, t);
    let mv_grid: Option<Vec<Vec<u64>>> = if diagonal.holds {
        Some(
            (2..=s_max)
                .map(|s| (0..=t_max).map(|t| mv(s, t)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    let mv_loop = if diagonal.holds && loops_enabled {
        match loop_from_pinched(&bq, t_max, mv) {
            Ok(v) => Some(v),
            Err(e) => {
                notes.push(format!("MV loop column disabled: {e}"));
                None
            }
        }
    } else {
        None
    };
    let mv_secs = mv_start.elapsed().as_secs_f64();

    let formula_start = Instant::now();
    let input = BettiInput::new(bq.clone(), ba.clone());
    let formula = |s: usize, t: usize| betti_pinched_formula(&input, s, t);
    let formula_grid: Option<Vec<Vec<u64>>> = if diagonal.holds {
        Some(
            (2..=s_max)
                .map(|s| (0..=t_max).map(|t| formula(s, t)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    let formula_loop = if diagonal.holds && loops_enabled {
        match loop_from_pinched(&bq, t_max, formula) {
            Ok(v) => Some(v),
            Err(e) => {
                notes.push(format!("formula loop column disabled: {e}"));
                None
            }
        }
    } else {
        None
    };
    let formula_secs = formula_start.elapsed().as_secs_f64();

    let mut cells = Vec::new();
    for (k, s) in (2..=s_max).enumerate() {
        for tt in 0..=t_max {
            let brute = Some(pinched_brute[k].get(tt)?);
            let mv = mv_grid.as_ref().map(|g| g[k][tt]);
            let formula = formula_grid.as_ref().map(|g| g[k][tt]);
            cells.push(CellRow {
                s,
                t: tt,
                brute,
                mv,
                formula,
                agree: agree(&[brute, mv, formula]),
            });
        }
    }
    let mut loop_rows = Vec::new();
    if loops_enabled {
        for n in 1..=t_max {
            let brute = if n <= brute_loop_max {
                Some(loop_betti(&quotient_brute, n)?)
            } else {
                None
            };
            let mv = mv_loop.as_ref().map(|v| v[n - 1]);
            let formula = formula_loop.as_ref().map(|v| v[n - 1]);
            loop_rows.push(LoopRow {
                n,
                brute,
                mv,
                formula,
                agree: agree(&[brute, mv, formula]),
            });
        }
    }
    let all_agree = cells.iter().all(|c| c.agree) && loop_rows.iter().all(|r| r.agree);
    Ok(RunReport {
        fixture: name.to_string(),
        truncation: trunc,
        s_max,
        t_max,
        section,
        diagonal,
        connected,
        orbit_betti: bq,
        fixed_betti: ba,
        cells,
        loop_rows,
        notes,
        timings: Timings {
            brute_secs,
            mv_secs,
            formula_secs,
            total_secs: start.elapsed().as_secs_f64(),
        },
        all_agree,
    })
}

/// Closed-form loop space Betti number against the series coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub closed_form: u64,
    pub series: i64,
    /// Rows through degree 12 are checked; later rows are only reported.
    pub asserted: bool,
    pub matches: bool,
}

/// Degrees through which the series is known to match.
pub const CONJECTURE_ASSERTED_THROUGH: usize = 12;

pub fn conjecture_rows(n_max: usize) -> Result<Vec<ConjectureRow>> {
    let series = poincare_coeffs(n_max);
    (1..=n_max)
        .map(|n| {
            let closed_form = loop_betti_example(n)?;
            let coeff = series.coeff(n).expect("expanded through n_max");
            Ok(ConjectureRow {
                n,
                closed_form,
                series: coeff,
                asserted: n <= CONJECTURE_ASSERTED_THROUGH,
                matches: i64::try_from(closed_form).is_ok_and(|c| c == coeff),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::fixtures;

    #[test]
    fn hemisphere_fixture_agrees() {
        let (x, t) = fixtures::four_discs(5);
        let r = verify("four_discs", Arc::new(x), &t, 3, 4).unwrap();
        assert!(r.section.holds && r.diagonal.holds && r.connected.holds);
        assert!(r.all_agree, "{r:#?}");
        let b33 = r.cells.iter().find(|c| c.s == 3 && c.t == 3).unwrap();
        assert_eq!((b33.brute, b33.mv, b33.formula), (Some(2), Some(2), Some(2)));
        let row = |n: usize| r.loop_rows[n - 1].clone();
        assert_eq!(row(2).brute, Some(2));
        assert_eq!(row(3).brute, Some(1));
        assert_eq!(row(4).brute, None);
        assert_eq!(row(4).formula, Some(5));
        assert_eq!(row(4).mv, Some(5));
    }

    #[test]
    fn trivial_circle_agrees() {
        let (x, t) = fixtures::trivial_circle(5);
        let r = verify("trivial_circle", Arc::new(x), &t, 3, 4).unwrap();
        assert!(r.section.holds && r.diagonal.holds);
        assert!(r.all_agree, "{r:#?}");
        assert!(r.loop_rows.iter().take(3).all(|row| row.brute.is_some()));
    }

    #[test]
    fn free_cover_has_no_section() {
        let (x, t) = fixtures::free_double_cover(4);
        let r = verify("free_double_cover", Arc::new(x), &t, 3, 2).unwrap();
        assert!(!r.section.holds);
        assert!(r.section.detail.contains("no section"));
        assert!(r.loop_rows.is_empty());
        assert!(r.cells.iter().all(|c| c.brute.is_some()));
    }

    #[test]
    fn truncation_must_cover_t_max() {
        let (x, t) = fixtures::four_discs(3);
        assert!(matches!(verify("x", Arc::new(x), &t, 2, 3), Err(Error::Truncation { .. })));
    }

    #[test]
    fn conjecture_window() {
        let rows = conjecture_rows(24).unwrap();
        assert_eq!(rows.len(), 24);
        assert!(rows.iter().filter(|r| r.asserted).all(|r| r.matches));
        assert_eq!(rows[11].closed_form, 417);
        assert!(rows[12..].iter().all(|r| !r.asserted));
    }
}
