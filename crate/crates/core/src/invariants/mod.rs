//! The taut polynomial Θ, the Alexander polynomial Δ, the double-cover
//! polynomial Δ̂, and the identities relating them.

mod fitting;
mod matrices;
mod packed;

pub use fitting::{drop_redundant_columns, fitting_gcd, maximal_minors, maximal_minors_gcd, maximal_minors_general, unit_pivot_reduce, FittingError};
pub use matrices::{
    build_alexander_matrix, build_taut_matrix, presentation_matrix, tet_boundary_matrix, LiftChoices, Presentation,
};

use serde::{Deserialize, Serialize};

use crate::census_io::{GluingTable, TautAngleVector};
use crate::homology::{compute_h1, H1Data};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::taut_structure::{
    build_double_cover, build_tracks, derive_coorientation, derive_veering_colouring, edge_orientation_data, DoubleCover,
    EdgeOrientationData, TautError, TautStructure, TrackData,
};

/// Everything derived from one triangulation before polynomials are taken.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub ts: TautStructure,
    pub h1: H1Data,
    pub tracks: TrackData,
    pub eo: EdgeOrientationData,
}

impl Analysis {
    pub fn new(table: &GluingTable, angles: &TautAngleVector) -> Result<Self, TautError> {
        let ts = derive_coorientation(table, angles)?;
        Ok(Self::from_structure(ts)?)
    }

    pub fn from_structure(ts: TautStructure) -> Result<Self, TautError> {
        derive_veering_colouring(&ts)?;
        let h1 = compute_h1(&ts);
        let tracks = build_tracks(&ts);
        let eo = edge_orientation_data(&ts, &h1);
        Ok(Analysis { ts, h1, tracks, eo })
    }

    pub fn taut_matrix(&self) -> LaurentMatrix {
        build_taut_matrix(&self.ts, &self.tracks, &self.h1)
    }

    pub fn alexander_matrix(&self) -> LaurentMatrix {
        build_alexander_matrix(&self.ts, &self.h1)
    }

    pub fn theta(&self) -> LaurentPoly {
        fitting_gcd(&self.taut_matrix()).expect("|E| ≤ |F|")
    }

    pub fn delta(&self) -> LaurentPoly {
        fitting_gcd(&self.alexander_matrix()).expect("|E| ≤ |F|")
    }

    /// Δ̂ from the double cover, with coefficients pushed down to Z[H_M].
    pub fn delta_hat(&self, cover: &DoubleCover) -> LaurentPoly {
        fitting_gcd(&cover_alexander_matrix(cover, &self.h1)).expect("|E| ≤ |F|")
    }

    pub fn report(&self) -> PolyReport {
        let theta = self.theta();
        let delta = self.delta();
        let (delta_hat, cover_cusps) = if self.eo.is_edge_orientable {
            (None, None)
        } else {
            let cover = build_double_cover(&self.ts);
            (Some(self.delta_hat(&cover)), Some(cover.ts.table().n_vertices()))
        };
        PolyReport {
            b1: self.h1.rank(),
            torsion: self.h1.torsion().to_vec(),
            cusps: self.ts.table().n_vertices(),
            theta,
            delta,
            delta_hat,
            edge_orientable: self.eo.is_edge_orientable,
            edge_orientable_fab: self.eo.sigma.is_some(),
            sigma: self.eo.sigma.clone(),
            cover_cusps,
        }
    }
}

/// The map H^or → H_M: column `k` is the image of the `k`-th free
/// generator of the cover's first homology.
pub fn cover_pushforward(cover: &DoubleCover, cover_h1: &H1Data, base_h1: &H1Data) -> Vec<Vec<i64>> {
    let base_faces = base_h1.complex.arcs.len();
    let k = cover_h1.torsion().len();
    let cols: Vec<Vec<i64>> = cover_h1.generators()[k..]
        .iter()
        .map(|g| {
            let class = base_h1.class_of(&cover.project_chain(g, base_faces));
            base_h1.homology.free_part(&class).to_vec()
        })
        .collect();
    (0..base_h1.rank()).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

/// Alexander matrix of the cover over Z[H^or], specialised to Z[H_M].
pub fn cover_alexander_matrix(cover: &DoubleCover, base_h1: &H1Data) -> LaurentMatrix {
    let cover_h1 = compute_h1(&cover.ts);
    let push = cover_pushforward(cover, &cover_h1, base_h1);
    build_alexander_matrix(&cover.ts, &cover_h1).specialize(&push, None)
}

/// The polynomials of one triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyReport {
    pub b1: usize,
    pub torsion: Vec<i64>,
    pub cusps: usize,
    pub theta: LaurentPoly,
    pub delta: LaurentPoly,
    /// Present when the triangulation is not edge-orientable.
    pub delta_hat: Option<LaurentPoly>,
    pub edge_orientable: bool,
    /// Whether the maximal free abelian cover is edge-orientable, i.e. σ exists.
    pub edge_orientable_fab: bool,
    pub sigma: Option<Vec<i8>>,
    /// Cusp count of the double cover, when it is connected.
    pub cover_cusps: Option<usize>,
}

pub fn compute_polynomials(table: &GluingTable, angles: &TautAngleVector) -> Result<PolyReport, TautError> {
    Ok(Analysis::new(table, angles)?.report())
}

/// Outcome of each identity; `None` when it does not apply.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    /// Θ(h) ≐ Δ(σ(h)·h), checked when σ exists.
    pub theta_twisted_delta: Option<bool>,
    /// Δ̂ ≐ Δ·Θ, checked when σ does not exist.
    pub delta_hat_product: Option<bool>,
    /// Even torsion order, checked when Θ is not Δ(±h) for any signs.
    pub even_torsion: Option<bool>,
}

impl VerifyRecord {
    pub fn all_pass(&self) -> bool {
        [self.theta_twisted_delta, self.delta_hat_product, self.even_torsion].iter().all(|x| x.unwrap_or(true))
    }
}

/// Largest b_1 for which every sign vector is tried.
const MAX_SIGN_SEARCH: usize = 16;

pub fn verify_identities(report: &PolyReport) -> VerifyRecord {
    let theta = report.theta.normalize_unit();
    let mut rec = VerifyRecord::default();
    match &report.sigma {
        Some(sigma) => rec.theta_twisted_delta = Some(theta == report.delta.twist(sigma).normalize_unit()),
        None => {
            rec.delta_hat_product = Some(report.delta_hat.as_ref().is_some_and(|dh| {
                dh.normalize_unit() == (&report.delta * &report.theta).normalize_unit()
            }))
        }
    }
    let r = report.b1;
    if r <= MAX_SIGN_SEARCH {
        let some_sign_matches = (0..1u32 << r).any(|mask| {
            let chi: Vec<i8> = (0..r).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            report.delta.twist(&chi).normalize_unit() == theta
        });
        if !some_sign_matches {
            let order: i64 = report.torsion.iter().product();
            rec.even_torsion = Some(order % 2 == 0);
        }
    }
    rec
}
