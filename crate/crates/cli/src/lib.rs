//! Record types and per-entry pipelines behind the `veerpoly` binary.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use veerpoly::census_io::parse_taut_sig;
use veerpoly::filling::{
    fill, predict_filled_alexander, specialise_under_filling, FillingCase, FillingError, FillingSpec,
};
use veerpoly::homology::vertex_links;
use veerpoly::invariants::{verify_identities, Analysis, PolyReport, VerifyRecord};
use veerpoly::laurent::LaurentPoly;
use veerpoly::taut_structure::build_double_cover;

/// Failure of one pipeline run, mapped to the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunError {
    /// Bad signature, slope string or file: exit code 1.
    Input(String),
    /// A violated internal assertion: exit code 2.
    Internal(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Input(_) => 1,
            RunError::Internal(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            RunError::Input(m) | RunError::Internal(m) => m,
        }
    }
}

/// Runs `f`, turning a panic into `RunError::Internal`.
pub fn guarded<T>(f: impl FnOnce() -> Result<T, RunError>) -> Result<T, RunError> {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".to_string());
            Err(RunError::Internal(msg))
        }
    }
}

pub fn analyse(sig: &str) -> Result<Analysis, RunError> {
    let (table, angles) = parse_taut_sig(sig).map_err(|e| RunError::Input(format!("{sig}: {e}")))?;
    Analysis::new(&table, &angles).map_err(|e| RunError::Input(format!("{sig}: {e}")))
}

/// Which polynomials `compute` should produce.
#[derive(Clone, Copy, Debug, Default)]
pub struct Selection {
    pub taut: bool,
    pub alex: bool,
    pub hat: bool,
}

impl Selection {
    pub const ALL: Selection = Selection { taut: true, alex: true, hat: true };
    pub const NONE: Selection = Selection { taut: false, alex: false, hat: false };
}

/// One census entry's results; also the `compute` output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub sig: String,
    pub b1: Option<usize>,
    pub torsion: Option<Vec<i64>>,
    pub cusps: Option<usize>,
    pub edge_orientable: Option<bool>,
    /// Whether σ exists (the maximal free abelian cover is edge-orientable).
    pub edge_orientable_fab: Option<bool>,
    pub sigma: Option<Vec<i8>>,
    /// Cusp count of the edge-orientation double cover when it is connected.
    pub cover_cusps: Option<usize>,
    pub theta: Option<LaurentPoly>,
    pub delta: Option<LaurentPoly>,
    pub delta_hat: Option<LaurentPoly>,
    pub verify: Option<VerifyRecord>,
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<f64>,
}

impl RunRecord {
    fn empty(sig: &str) -> Self {
        RunRecord {
            sig: sig.to_string(),
            b1: None,
            torsion: None,
            cusps: None,
            edge_orientable: None,
            edge_orientable_fab: None,
            sigma: None,
            cover_cusps: None,
            theta: None,
            delta: None,
            delta_hat: None,
            verify: None,
            error: None,
            time_ms: None,
        }
    }

    pub fn failed(sig: &str, err: &RunError) -> Self {
        let mut r = Self::empty(sig);
        r.error = Some(match err {
            RunError::Input(m) => format!("input: {m}"),
            RunError::Internal(m) => format!("internal: {m}"),
        });
        r
    }
}

/// Computes the selected invariants of one signature. With `verify`, all
/// three polynomials are computed and the identities checked.
pub fn run_entry(sig: &str, sel: Selection, verify: bool, timing: bool) -> Result<RunRecord, RunError> {
    let start = Instant::now();
    let an = analyse(sig)?;
    let mut rec = RunRecord::empty(sig);
    rec.b1 = Some(an.h1.rank());
    rec.torsion = Some(an.h1.torsion().to_vec());
    rec.cusps = Some(an.ts.table().n_vertices());
    rec.edge_orientable = Some(an.eo.is_edge_orientable);
    rec.edge_orientable_fab = Some(an.eo.sigma.is_some());
    rec.sigma = an.eo.sigma.clone();
    let cover = (!an.eo.is_edge_orientable).then(|| build_double_cover(&an.ts));
    rec.cover_cusps = cover.as_ref().map(|c| c.ts.table().n_vertices());
    let sel = if verify { Selection::ALL } else { sel };
    if sel.taut {
        rec.theta = Some(an.theta());
    }
    if sel.alex {
        rec.delta = Some(an.delta());
    }
    if sel.hat {
        rec.delta_hat = cover.as_ref().map(|c| an.delta_hat(c));
    }
    if verify {
        let report = PolyReport {
            b1: an.h1.rank(),
            torsion: an.h1.torsion().to_vec(),
            cusps: an.ts.table().n_vertices(),
            theta: rec.theta.clone().unwrap(),
            delta: rec.delta.clone().unwrap(),
            delta_hat: rec.delta_hat.clone(),
            edge_orientable: an.eo.is_edge_orientable,
            edge_orientable_fab: an.eo.sigma.is_some(),
            sigma: an.eo.sigma.clone(),
            cover_cusps: rec.cover_cusps,
        };
        rec.verify = Some(verify_identities(&report));
    }
    if timing {
        rec.time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(rec)
}

/// Counts reported at the end of a batch run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub total: usize,
    pub errors: usize,
    pub edge_orientable: usize,
    pub not_edge_orientable: usize,
    /// Not edge-orientable, double cover with as many cusps as the base.
    pub cover_same_cusps: usize,
    /// Not edge-orientable, double cover with twice as many cusps.
    pub cover_doubled_cusps: usize,
    pub identity_pass: usize,
    pub identity_fail: usize,
}

impl BatchSummary {
    pub fn add(&mut self, r: &RunRecord) {
        self.total += 1;
        if r.error.is_some() {
            self.errors += 1;
            return;
        }
        match r.edge_orientable {
            Some(true) => self.edge_orientable += 1,
            Some(false) => {
                self.not_edge_orientable += 1;
                if let (Some(c), Some(cc)) = (r.cusps, r.cover_cusps) {
                    if cc == c {
                        self.cover_same_cusps += 1;
                    } else if cc == 2 * c {
                        self.cover_doubled_cusps += 1;
                    }
                }
            }
            None => {}
        }
        if let Some(v) = &r.verify {
            if v.all_pass() {
                self.identity_pass += 1;
            } else {
                self.identity_fail += 1;
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CuspBasis {
    /// H_1(M; Z) classes (torsion then free coordinates) of the basis slopes.
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Prediction {
    pub delta_n: LaurentPoly,
    pub case: FillingCase,
    /// Whether i_*(Θ)(h) = Δ_N(±h) holds.
    pub equality: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FillRecord {
    pub sig: String,
    pub slopes: Vec<Option<(i64, i64)>>,
    pub cusp_bases: Vec<CuspBasis>,
    pub torsion_n: Vec<i64>,
    pub rank_n: usize,
    pub i_star: Vec<Vec<i64>>,
    pub core_classes: Vec<Vec<i64>>,
    pub trivial_cores: Vec<usize>,
    pub boundary_empty: bool,
    pub sigma_n: Option<Vec<i8>>,
    /// i_*(Θ); the Teichmüller polynomial of the fibred face when the
    /// triangulation is layered, which is not checked here.
    pub specialised_taut: LaurentPoly,
    pub prediction: Option<Prediction>,
    /// Why no prediction was made, if it was not.
    pub prediction_error: Option<String>,
}

pub fn run_fill(sig: &str, slopes: &str) -> Result<FillRecord, RunError> {
    let an = analyse(sig)?;
    let cusps = vertex_links(&an.ts, &an.h1);
    let spec = FillingSpec::parse(slopes, cusps.len()).map_err(|e| RunError::Input(e.to_string()))?;
    let fh = fill(&an.h1, &cusps, &an.eo, &spec);
    let theta = an.theta();
    let specialised = specialise_under_filling(&theta, &fh).map_err(|e| RunError::Input(e.to_string()))?;
    let (prediction, prediction_error) = match predict_filled_alexander(&theta, &fh, an.h1.rank()) {
        Ok(p) => (Some(Prediction { delta_n: p.delta_n, case: p.case, equality: p.equality }), None),
        Err(e @ (FillingError::NoSigma | FillingError::TrivialCoreClass(_) | FillingError::NotDivisible)) => {
            (None, Some(e.to_string()))
        }
        Err(e) => return Err(RunError::Input(e.to_string())),
    };
    Ok(FillRecord {
        sig: sig.to_string(),
        slopes: spec.slopes.clone(),
        cusp_bases: cusps.iter().map(|c| CuspBasis { a: c.peripheral[0].clone(), b: c.peripheral[1].clone() }).collect(),
        torsion_n: fh.torsion.clone(),
        rank_n: fh.rank,
        i_star: fh.i_star.clone(),
        core_classes: fh.core_classes.clone(),
        trivial_cores: fh.trivial_cores(),
        boundary_empty: fh.boundary_empty,
        sigma_n: fh.sigma_n.clone(),
        specialised_taut: specialised.normalize_unit(),
        prediction,
        prediction_error,
    })
}
