//! Local extrema of witness series and their mutual alignment.

use serde::Serialize;

use super::WitnessSeries;

/// Neighbouring values closer than this belong to one plateau.
pub const PLATEAU_TOL: f64 = 1e-12;
/// Negativity below this counts as entanglement sudden death.
pub const EPS_NEGATIVITY: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Extremum {
    pub index: usize,
    pub tau: f64,
    pub kind: ExtremumKind,
}

/// How far an HSS extremum sits from the nearest negativity / MID extremum,
/// in grid steps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Alignment {
    pub hss: Extremum,
    pub negativity_offset: Option<usize>,
    pub mid_offset: Option<usize>,
    pub in_sudden_death: bool,
    /// Within `window` steps of a negativity or MID extremum.
    pub aligned: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremaReport {
    pub hss: Vec<Extremum>,
    pub negativity: Vec<Extremum>,
    pub mid: Vec<Extremum>,
    pub alignments: Vec<Alignment>,
    /// Inclusive index ranges where negativity stays below `eps_negativity`
    /// over at least two consecutive nodes.
    pub sudden_death: Vec<(usize, usize)>,
    pub sudden_death_tau: Vec<(f64, f64)>,
    pub window: usize,
}

impl ExtremaReport {
    /// HSS extrema outside sudden-death intervals that are not aligned.
    pub fn misaligned(&self) -> Vec<&Alignment> {
        self.alignments
            .iter()
            .filter(|a| !a.in_sudden_death && !a.aligned)
            .collect()
    }
}

/// Local extrema by three-point sign change; a run of equal values counts
/// once, at its midpoint. End points are never extrema.
pub fn local_extrema(values: &[f64], tau: &[f64]) -> Vec<Extremum> {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || (values[i] - values[i - 1]).abs() > PLATEAU_TOL {
            runs.push((start, i - 1));
            start = i;
        }
    }
    let mut out = Vec::new();
    for w in runs.windows(3) {
        let (prev, cur, next) = (w[0], w[1], w[2]);
        let before = values[prev.1];
        let here = values[cur.0];
        let after = values[next.0];
        let kind = if here > before && here > after {
            ExtremumKind::Max
        } else if here < before && here < after {
            ExtremumKind::Min
        } else {
            continue;
        };
        let index = (cur.0 + cur.1) / 2;
        out.push(Extremum {
            index,
            tau: tau[index],
            kind,
        });
    }
    out
}

/// Maximal index runs of length ≥ 2 where `values < eps`.
pub fn below_threshold_runs(values: &[f64], eps: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for i in 0..=values.len() {
        let below = i < values.len() && values[i] < eps;
        match (below, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                if i - s >= 2 {
                    out.push((s, i - 1));
                }
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn nearest_offset(index: usize, others: &[Extremum]) -> Option<usize> {
    others.iter().map(|e| e.index.abs_diff(index)).min()
}

/// Locate extrema of every series, measure HSS-to-correlation alignment and
/// find sudden-death intervals.
pub fn extrema_report(series: &WitnessSeries, eps_negativity: f64, window: usize) -> ExtremaReport {
    let tau = &series.tau_grid;
    let hss = local_extrema(&series.hss, tau);
    let negativity = local_extrema(&series.negativity, tau);
    let mid = local_extrema(&series.mid, tau);
    let sudden_death = below_threshold_runs(&series.negativity, eps_negativity);
    let alignments = hss
        .iter()
        .map(|&e| {
            let negativity_offset = nearest_offset(e.index, &negativity);
            let mid_offset = nearest_offset(e.index, &mid);
            let best = negativity_offset.into_iter().chain(mid_offset).min();
            Alignment {
                hss: e,
                negativity_offset,
                mid_offset,
                in_sudden_death: sudden_death
                    .iter()
                    .any(|&(a, b)| e.index >= a && e.index <= b),
                aligned: best.is_some_and(|d| d <= window),
            }
        })
        .collect();
    ExtremaReport {
        sudden_death_tau: sudden_death.iter().map(|&(a, b)| (tau[a], tau[b])).collect(),
        hss,
        negativity,
        mid,
        alignments,
        sudden_death,
        window,
    }
}
