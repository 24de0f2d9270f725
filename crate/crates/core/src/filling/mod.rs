//! Dehn filling: homology of the filled manifold, specialisation of Θ, and
//! the predicted Alexander polynomial of the filling.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::{smith_normal_form, CuspData, H1Data, SnfResult};
use crate::laurent::{exact_div, LaurentPoly};
use crate::taut_structure::EdgeOrientationData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FillingError {
    #[error("malformed slope specification {0:?}")]
    Malformed(String),
    #[error("cusp {cusp} out of range (the manifold has {n_cusps} cusps)")]
    CuspOutOfRange { cusp: usize, n_cusps: usize },
    #[error("cusp {0} is filled twice")]
    Duplicate(usize),
    #[error("slope {x}/{y} is not primitive")]
    NotPrimitive { x: i64, y: i64 },
    #[error("the filled manifold has no free homology")]
    NoFreeHomology,
    #[error("the edge-orientation homomorphism does not factor through H_N")]
    NoSigma,
    #[error("core curves {0:?} are trivial in H_N")]
    TrivialCoreClass(Vec<usize>),
    #[error("the specialised taut polynomial is not divisible by the core-curve factors")]
    NotDivisible,
}

/// A slope `x·a + y·b` per filled cusp, in the cusp's own `(a, b)` basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FillingSpec {
    pub slopes: Vec<Option<(i64, i64)>>,
}

impl FillingSpec {
    pub fn unfilled(n_cusps: usize) -> Self {
        FillingSpec { slopes: vec![None; n_cusps] }
    }

    pub fn new(slopes: Vec<Option<(i64, i64)>>) -> Result<Self, FillingError> {
        for &(x, y) in slopes.iter().flatten() {
            if x.gcd(&y) != 1 {
                return Err(FillingError::NotPrimitive { x, y });
            }
        }
        Ok(FillingSpec { slopes })
    }

    /// Parses `"c0:1/0,c2:3/-1"`; an empty string fills nothing.
    pub fn parse(s: &str, n_cusps: usize) -> Result<Self, FillingError> {
        let mut slopes = vec![None; n_cusps];
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let bad = || FillingError::Malformed(item.to_string());
            let (cusp, slope) = item.strip_prefix('c').and_then(|r| r.split_once(':')).ok_or_else(bad)?;
            let (x, y) = slope.split_once('/').ok_or_else(bad)?;
            let cusp: usize = cusp.trim().parse().map_err(|_| bad())?;
            let x: i64 = x.trim().parse().map_err(|_| bad())?;
            let y: i64 = y.trim().parse().map_err(|_| bad())?;
            if cusp >= n_cusps {
                return Err(FillingError::CuspOutOfRange { cusp, n_cusps });
            }
            if slopes[cusp].is_some() {
                return Err(FillingError::Duplicate(cusp));
            }
            slopes[cusp] = Some((x, y));
        }
        Self::new(slopes)
    }

    pub fn filled(&self) -> impl Iterator<Item = (usize, (i64, i64))> + '_ {
        self.slopes.iter().enumerate().filter_map(|(j, s)| s.map(|s| (j, s)))
    }

    pub fn n_filled(&self) -> usize {
        self.filled().count()
    }
}

/// H_1 of the filled manifold N and the maps into it.
#[derive(Clone, Debug)]
pub struct FilledHomology {
    /// Torsion divisors of H_1(N; Z).
    pub torsion: Vec<i64>,
    /// s = rank of H_N.
    pub rank: usize,
    /// `s × r` matrix of i_*: H_M → H_N.
    pub i_star: Vec<Vec<i64>>,
    /// Filled cusp indices, in order.
    pub filled: Vec<usize>,
    /// [ℓ_j] ∈ H_N per filled cusp.
    pub core_classes: Vec<Vec<i64>>,
    pub boundary_empty: bool,
    pub sigma_n: Option<Vec<i8>>,
    /// Torsion-then-free coordinate count of H_1(M; Z).
    m_coords: usize,
    snf: SnfResult,
}

/// A dual slope `(p, q)` with `x·q − y·p = 1`.
pub fn dual_slope(x: i64, y: i64) -> (i64, i64) {
    let e = x.extended_gcd(&y);
    // e.x·x + e.y·y = gcd = ±1
    let g = e.gcd;
    (-e.y * g, e.x * g)
}

impl FilledHomology {
    /// Image in H_1(N; Z) (torsion then free coordinates) of an H_1(M; Z) class.
    pub fn push_full(&self, class: &[i64]) -> Vec<i64> {
        assert_eq!(class.len(), self.m_coords);
        let rho = self.snf.rank();
        let mut out = Vec::with_capacity(self.torsion.len() + self.rank);
        for i in 0..self.m_coords {
            let y: i64 = class.iter().enumerate().map(|(k, &c)| c * self.snf.v[k][i]).sum();
            let d = if i < rho { self.snf.diagonal[i] } else { 0 };
            match d {
                1 => {}
                0 => out.push(y),
                d => out.push(y.rem_euclid(d)),
            }
        }
        out
    }

    /// Image in H_N of an H_1(M; Z) class.
    pub fn push(&self, class: &[i64]) -> Vec<i64> {
        self.push_full(class)[self.torsion.len()..].to_vec()
    }

    /// Indices of filled cusps whose core class vanishes in H_N.
    pub fn trivial_cores(&self) -> Vec<usize> {
        self.filled.iter().zip(&self.core_classes).filter(|(_, c)| c.iter().all(|&x| x == 0)).map(|(&j, _)| j).collect()
    }

    pub fn k(&self) -> usize {
        self.filled.len()
    }

    /// The composite H_1(M; Z) → H_1(N; Z) coordinate functionals, as the
    /// classes in H_1(M; Z) of the H_1(N; Z) basis elements.
    fn basis_preimages(&self) -> Vec<Vec<i64>> {
        let rho = self.snf.rank();
        (0..self.m_coords)
            .filter(|&i| i >= rho || self.snf.diagonal[i] > 1)
            .map(|i| self.snf.v_inv[i].clone())
            .collect()
    }
}

/// H_1(N; Z) from H_1(M; Z) and the slope relations.
pub fn filled_homology(h1: &H1Data, cusps: &[CuspData], spec: &FillingSpec) -> FilledHomology {
    assert_eq!(spec.slopes.len(), cusps.len(), "filling spec has the wrong number of cusps");
    let t = h1.torsion().len();
    let n = t + h1.rank();
    let mut relations: Vec<Vec<i64>> = h1
        .torsion()
        .iter()
        .enumerate()
        .map(|(k, &d)| {
            let mut row = vec![0; n];
            row[k] = d;
            row
        })
        .collect();
    for (j, (x, y)) in spec.filled() {
        relations.push(cusps[j].slope_class(x, y));
    }
    let snf = smith_normal_form(&relations, n);
    let rho = snf.rank();
    let torsion: Vec<i64> = snf.diagonal.iter().copied().filter(|&d| d > 1).collect();
    let mut fh = FilledHomology {
        torsion,
        rank: n - rho,
        i_star: Vec::new(),
        filled: spec.filled().map(|(j, _)| j).collect(),
        core_classes: Vec::new(),
        boundary_empty: spec.n_filled() == cusps.len(),
        sigma_n: None,
        m_coords: n,
        snf,
    };
    let unit = |i: usize| (0..n).map(|k| i64::from(k == t + i)).collect::<Vec<_>>();
    let columns: Vec<Vec<i64>> = (0..h1.rank()).map(|i| fh.push(&unit(i))).collect();
    fh.i_star = (0..fh.rank).map(|a| columns.iter().map(|c| c[a]).collect()).collect();
    fh.core_classes = spec
        .filled()
        .map(|(j, (x, y))| {
            let (p, q) = dual_slope(x, y);
            fh.push(&cusps[j].slope_class(p, q))
        })
        .collect();
    fh
}

fn omega_of(omega: &[u8], class: &[i64]) -> u8 {
    (omega.iter().zip(class).map(|(&w, &c)| i64::from(w) * c).sum::<i64>().rem_euclid(2)) as u8
}

/// σ_N, present when ω factors through H_N: it must kill every filled slope
/// and the torsion of H_1(N; Z).
pub fn vn_edge_orientable(eo: &EdgeOrientationData, fh: &FilledHomology, spec: &FillingSpec, cusps: &[CuspData]) -> Option<Vec<i8>> {
    if spec.filled().any(|(j, (x, y))| omega_of(&eo.omega, &cusps[j].slope_class(x, y)) != 0) {
        return None;
    }
    let images: Vec<u8> = fh.basis_preimages().iter().map(|g| omega_of(&eo.omega, g)).collect();
    let (tors, free) = images.split_at(fh.torsion.len());
    tors.iter().all(|&w| w == 0).then(|| free.iter().map(|&w| if w == 0 { 1 } else { -1 }).collect())
}

/// `filled_homology` followed by `vn_edge_orientable`.
pub fn fill(h1: &H1Data, cusps: &[CuspData], eo: &EdgeOrientationData, spec: &FillingSpec) -> FilledHomology {
    let mut fh = filled_homology(h1, cusps, spec);
    fh.sigma_n = vn_edge_orientable(eo, &fh, spec, cusps);
    fh
}

/// i_*(Θ); for a layered triangulation this is the Teichmüller polynomial
/// of the corresponding fibred face.
pub fn specialise_under_filling(theta: &LaurentPoly, fh: &FilledHomology) -> Result<LaurentPoly, FillingError> {
    if fh.rank == 0 {
        return Err(FillingError::NoFreeHomology);
    }
    Ok(theta.specialize(&fh.i_star, None))
}

/// i_*(Δ_M) with the sign twist `h ↦ σ_N(h)·h`, which must agree with
/// i_*(Θ) up to a unit whenever σ_N exists.
pub fn twisted_alexander_image(delta: &LaurentPoly, fh: &FilledHomology) -> Result<LaurentPoly, FillingError> {
    let sigma = fh.sigma_n.as_ref().ok_or(FillingError::NoSigma)?;
    Ok(specialise_under_filling(delta, fh)?.twist(sigma))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FillingCase {
    /// b1(M) ≥ 2, s ≥ 2.
    #[serde(rename = "I(a)")]
    IA,
    /// b1(M) ≥ 2, s = 1, N has boundary.
    #[serde(rename = "I(b) boundary")]
    IBBoundary,
    /// b1(M) ≥ 2, s = 1, N closed.
    #[serde(rename = "I(b) closed")]
    IBClosed,
    /// b1(M) = 1, N has boundary.
    #[serde(rename = "II(a)")]
    IIA,
    /// b1(M) = 1, N closed.
    #[serde(rename = "II(b)")]
    IIB,
}

impl FillingCase {
    pub fn dispatch(b1_m: usize, s: usize, boundary_empty: bool) -> Self {
        match (b1_m >= 2, s >= 2, boundary_empty) {
            (true, true, _) => FillingCase::IA,
            (true, false, false) => FillingCase::IBBoundary,
            (true, false, true) => FillingCase::IBClosed,
            (false, _, false) => FillingCase::IIA,
            (false, _, true) => FillingCase::IIB,
        }
    }

    /// Exponent of `h − σ_N(h)` on the Θ side.
    fn h_power(self) -> u32 {
        match self {
            FillingCase::IA | FillingCase::IIA => 0,
            FillingCase::IBBoundary | FillingCase::IIB => 1,
            FillingCase::IBClosed => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FillingCase::IA => "I(a)",
            FillingCase::IBBoundary => "I(b) boundary",
            FillingCase::IBClosed => "I(b) closed",
            FillingCase::IIA => "II(a)",
            FillingCase::IIB => "II(b)",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FilledAlexander {
    /// Δ_N, unit-normalised.
    pub delta_n: LaurentPoly,
    pub case: FillingCase,
    /// Whether i_*(Θ)(h) = Δ_N(±h) is predicted.
    pub equality: bool,
}

/// `[ℓ] − σ_N([ℓ])` in Z[H_N].
fn core_factor(class: &[i64], sigma: &[i8]) -> LaurentPoly {
    let s = sigma.iter().zip(class).filter(|(&x, &c)| x < 0 && c.rem_euclid(2) == 1).count();
    let sign = if s % 2 == 0 { 1 } else { -1 };
    &LaurentPoly::monomial(class.len(), class.to_vec(), 1) - &LaurentPoly::constant(class.len(), sign)
}

fn generates(class: &[i64]) -> bool {
    class.len() == 1 && class[0].abs() == 1
}

/// Solves the main filling formula for Δ_N.
pub fn predict_filled_alexander(theta: &LaurentPoly, fh: &FilledHomology, b1_m: usize) -> Result<FilledAlexander, FillingError> {
    let sigma = fh.sigma_n.as_ref().ok_or(FillingError::NoSigma)?;
    let image = specialise_under_filling(theta, fh)?;
    let trivial = fh.trivial_cores();
    if !trivial.is_empty() {
        return Err(FillingError::TrivialCoreClass(trivial));
    }
    let case = FillingCase::dispatch(b1_m, fh.rank, fh.boundary_empty);
    let s = fh.rank;
    let mut lhs = image;
    if case.h_power() > 0 {
        let h = core_factor(&[1], sigma);
        lhs = &lhs * &h.pow(case.h_power());
    }
    let product = match case {
        FillingCase::IIA => LaurentPoly::one(s),
        FillingCase::IIB => core_factor(&fh.core_classes[0], sigma),
        _ => fh.core_classes.iter().fold(LaurentPoly::one(s), |acc, c| &acc * &core_factor(c, sigma)),
    };
    let twisted = if lhs.is_zero() { lhs } else { exact_div(&lhs, &product).ok_or(FillingError::NotDivisible)? };
    let k = fh.k();
    let cores = &fh.core_classes;
    let equality = k == 0
        || (s == 1 && !fh.boundary_empty && k == 1 && generates(&cores[0]))
        || (s == 1 && fh.boundary_empty && k == 2 && generates(&cores[0]) && cores[0][0].abs() == cores[1][0].abs())
        || (b1_m == 1 && fh.boundary_empty && generates(&cores[0]));
    Ok(FilledAlexander { delta_n: twisted.twist(sigma).normalize_unit(), case, equality })
}

/// Parity test for a primitive class with coefficients `a` in the dual basis:
/// `a_j` odd exactly where σ_N is −1.
pub fn orientable_class_parity(a: &[i64], sigma_n: &[i8]) -> bool {
    assert_eq!(a.len(), sigma_n.len());
    a.iter().zip(sigma_n).all(|(&x, &s)| (x.rem_euclid(2) == 1) == (s < 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_examples() {
        assert!(orientable_class_parity(&[3, 2], &[-1, 1]));
        assert!(!orientable_class_parity(&[2, 1], &[-1, 1]));
        assert!(!orientable_class_parity(&[1, 2], &[1, 1]));
        assert!(orientable_class_parity(&[2, 4], &[1, 1]));
    }

    #[test]
    fn dual_slopes_have_unit_determinant() {
        for (x, y) in [(1, 0), (0, 1), (3, -2), (-5, 7), (1, 1), (-1, 0), (0, -1), (8, 3)] {
            let (p, q) = dual_slope(x, y);
            assert_eq!(x * q - y * p, 1, "slope {x}/{y}");
        }
    }

    #[test]
    fn spec_parsing() {
        let s = FillingSpec::parse("c0:1/0, c2:3/-1", 3).unwrap();
        assert_eq!(s.slopes, vec![Some((1, 0)), None, Some((3, -1))]);
        assert_eq!(FillingSpec::parse("", 2).unwrap(), FillingSpec::unfilled(2));
        assert_eq!(FillingSpec::parse("c0:2/4", 1), Err(FillingError::NotPrimitive { x: 2, y: 4 }));
        assert_eq!(FillingSpec::parse("c0:0/0", 1), Err(FillingError::NotPrimitive { x: 0, y: 0 }));
        assert_eq!(FillingSpec::parse("c3:1/0", 2), Err(FillingError::CuspOutOfRange { cusp: 3, n_cusps: 2 }));
        assert!(matches!(FillingSpec::parse("c0:1/0,c0:0/1", 1), Err(FillingError::Duplicate(0))));
        for bad in ["x0:1/0", "c0:1", "c0:a/1", "c:1/0"] {
            assert!(matches!(FillingSpec::parse(bad, 1), Err(FillingError::Malformed(_))), "{bad}");
        }
    }

    #[test]
    fn case_dispatch_is_total() {
        for b1 in 1..4 {
            for s in 1..=b1 {
                for closed in [false, true] {
                    let c = FillingCase::dispatch(b1, s, closed);
                    let expected = match (b1, s, closed) {
                        (1, _, false) => FillingCase::IIA,
                        (1, _, true) => FillingCase::IIB,
                        (_, 1, false) => FillingCase::IBBoundary,
                        (_, 1, true) => FillingCase::IBClosed,
                        _ => FillingCase::IA,
                    };
                    assert_eq!(c, expected);
                }
            }
        }
    }
}
