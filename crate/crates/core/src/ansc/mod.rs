//! Shortest cycle through every vertex: exact oracles and approximations.

mod approx;
mod exact;
mod sparse;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::dist::{Dist, Finite, Inf};
use crate::error::{invalid, Error, Result};

pub use approx::{ansc_2approx, ansc_k_approx, ansc_near_opt, edge_ball_size, EdgeBallIndex};
pub use exact::{exact_ansc, exact_ansc_directed};
pub use sparse::{ansc_2eps, ansc_6_1, ansc_k2, ansc_small_cycles, two_eps_beta};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnscAlgorithm {
    Exact,
    ExactDirected,
    TwoApprox,
    KApprox,
    NearOpt,
    SixOne,
    TwoEps,
    SmallCycles,
    KSquared,
}

impl AnscAlgorithm {
    pub const ALL: [AnscAlgorithm; 9] = [
        AnscAlgorithm::Exact,
        AnscAlgorithm::ExactDirected,
        AnscAlgorithm::TwoApprox,
        AnscAlgorithm::KApprox,
        AnscAlgorithm::NearOpt,
        AnscAlgorithm::SixOne,
        AnscAlgorithm::TwoEps,
        AnscAlgorithm::SmallCycles,
        AnscAlgorithm::KSquared,
    ];

    pub fn id(self) -> &'static str {
        match self {
            AnscAlgorithm::Exact => "exact",
            AnscAlgorithm::ExactDirected => "exact-directed",
            AnscAlgorithm::TwoApprox => "2approx",
            AnscAlgorithm::KApprox => "k-approx",
            AnscAlgorithm::NearOpt => "near-opt",
            AnscAlgorithm::SixOne => "6-1",
            AnscAlgorithm::TwoEps => "2eps",
            AnscAlgorithm::SmallCycles => "small-cycles",
            AnscAlgorithm::KSquared => "k2",
        }
    }

    /// Upper bound promised for a vertex whose shortest cycle has length `sc`.
    /// `beta` is the additive constant reported by the run, where one applies.
    pub fn bound(self, params: &AnscParams, sc: u64) -> f64 {
        let sc = sc as f64;
        let k = params.k.unwrap_or(0) as f64;
        let eps = params.eps.unwrap_or(0.0);
        match self {
            AnscAlgorithm::Exact | AnscAlgorithm::ExactDirected => sc,
            AnscAlgorithm::TwoApprox => 2.0 * sc,
            AnscAlgorithm::KApprox => k * (1.0 + eps).powi(3) * sc,
            AnscAlgorithm::NearOpt => sc + 2.0 * (sc / (2.0 * (k - 1.0))).ceil(),
            AnscAlgorithm::SixOne => 6.0 * sc + 1.0,
            AnscAlgorithm::TwoEps => (2.0 + eps) * sc + params.beta.unwrap_or(f64::INFINITY),
            AnscAlgorithm::SmallCycles => (2.0 * k - 1.0) * 2f64.powf(k - 2.0) * sc + 2f64.powf(k - 1.0),
            AnscAlgorithm::KSquared => k * k * sc + k.powi(3) * 2f64.powf(k + 1.0),
        }
    }
}

impl fmt::Display for AnscAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for AnscAlgorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AnscAlgorithm::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| invalid(format!("unknown ANSC algorithm '{s}'")))
    }
}

/// Parameters a run was invoked with, plus derived values it reports.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AnscParams {
    pub k: Option<usize>,
    pub eps: Option<f64>,
    /// Coverage parameter of the main hitting sample.
    pub x: Option<f64>,
    /// Additive term of the guarantee, when it is computed at run time.
    pub beta: Option<f64>,
    pub seed: u64,
}

impl AnscParams {
    pub fn seeded(seed: u64) -> AnscParams {
        AnscParams { seed, ..AnscParams::default() }
    }

    /// `k=3;eps=0.5;...` with absent fields omitted.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(k) = self.k {
            parts.push(format!("k={k}"));
        }
        if let Some(e) = self.eps {
            parts.push(format!("eps={e}"));
        }
        if let Some(x) = self.x {
            parts.push(format!("x={x:.3}"));
        }
        if let Some(b) = self.beta {
            parts.push(format!("beta={b}"));
        }
        parts.join(";")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnscResult {
    pub estimates: Vec<Dist>,
    pub exact: Option<Vec<Dist>>,
    pub algorithm: AnscAlgorithm,
    pub params: AnscParams,
    /// Arcs scanned by every search the algorithm ran.
    pub scanned: u64,
    /// Number of searches run.
    pub runs: u64,
}

impl AnscResult {
    pub(crate) fn new(estimates: Vec<Dist>, algorithm: AnscAlgorithm, params: AnscParams) -> AnscResult {
        AnscResult { estimates, exact: None, algorithm, params, scanned: 0, runs: 0 }
    }

    pub fn n(&self) -> usize {
        self.estimates.len()
    }

    /// Attaches exact values for ratio reporting and bound checks.
    pub fn with_exact(mut self, exact: Vec<Dist>) -> Result<AnscResult> {
        if exact.len() != self.n() {
            return Err(Error::SizeMismatch(self.n(), exact.len()));
        }
        self.exact = Some(exact);
        Ok(self)
    }

    pub fn ratio(&self, v: usize) -> Option<f64> {
        let exact = self.exact.as_ref()?[v];
        match (self.estimates[v], exact) {
            (Finite(e), Finite(x)) if x > 0 => Some(e as f64 / x as f64),
            _ => None,
        }
    }

    /// Vertices whose estimate is below the exact value or above the bound.
    pub fn violations(&self) -> Vec<usize> {
        let Some(exact) = &self.exact else { return Vec::new() };
        (0..self.n())
            .filter(|&v| match (exact[v], self.estimates[v]) {
                (Finite(sc), Finite(e)) => e < sc || e as f64 > self.algorithm.bound(&self.params, sc) + 1e-9,
                (Finite(_), Inf) => true,
                (Inf, est) => est != Inf,
            })
            .collect()
    }

    /// Fails with [`Error::BoundViolation`] naming the first offending vertex.
    pub fn assert_bounds(&self) -> Result<()> {
        if let Some(&v) = self.violations().first() {
            let exact = self.exact.as_ref().unwrap()[v];
            return Err(Error::BoundViolation(format!(
                "{}: vertex {v} has estimate {} but shortest cycle {exact}",
                self.algorithm, self.estimates[v]
            )));
        }
        Ok(())
    }

    /// CSV with columns `vertex,estimate,exact,ratio,algorithm,params,seed`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["vertex", "estimate", "exact", "ratio", "algorithm", "params", "seed"])?;
        let params = self.params.describe();
        for v in 0..self.n() {
            let exact = self.exact.as_ref().map(|e| e[v].to_string()).unwrap_or_default();
            let ratio = self.ratio(v).map(|r| format!("{r:.6}")).unwrap_or_default();
            w.write_record([
                v.to_string(),
                self.estimates[v].to_string(),
                exact,
                ratio,
                self.algorithm.id().to_string(),
                params.clone(),
                self.params.seed.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for a in AnscAlgorithm::ALL {
            assert_eq!(a.id().parse::<AnscAlgorithm>().unwrap(), a);
        }
        assert!("nope".parse::<AnscAlgorithm>().is_err());
    }

    #[test]
    fn bound_instantiations() {
        let p = |k| AnscParams { k: Some(k), ..AnscParams::default() };
        assert_eq!(AnscAlgorithm::SmallCycles.bound(&p(2), 5), 3.0 * 5.0 + 2.0);
        assert_eq!(AnscAlgorithm::SmallCycles.bound(&p(4), 1), 28.0 + 8.0);
        assert_eq!(AnscAlgorithm::KSquared.bound(&p(2), 1), 4.0 + 64.0);
        assert_eq!(AnscAlgorithm::KSquared.bound(&p(3), 0), 432.0);
        assert_eq!(AnscAlgorithm::NearOpt.bound(&p(3), 9), 15.0);
    }

    #[test]
    fn csv_shape() {
        let r = AnscResult::new(vec![Finite(3), Inf], AnscAlgorithm::TwoApprox, AnscParams::seeded(7))
            .with_exact(vec![Finite(3), Inf])
            .unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(
            s,
            "vertex,estimate,exact,ratio,algorithm,params,seed\n0,3,3,1.000000,2approx,,7\n1,inf,inf,,2approx,,7\n"
        );
        assert!(r.violations().is_empty());
    }
}
