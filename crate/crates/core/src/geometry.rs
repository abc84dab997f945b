//! Half-spaces and convex polytopes, with the Euclidean and Finsler
//! distances to their boundaries.
//!
//! The Finsler distance to a hyperplane {ν·x = b} with outward unit normal
//! ν is the Euclidean distance divided by F**(ν). For a convex polytope the
//! distance to the boundary is the minimum of the per-face hyperplane
//! distances: the nearest boundary point lies on some face, and on the way
//! to any other face's hyperplane the segment first crosses the boundary,
//! so the hyperplane minimum is also the boundary minimum (see
//! `docs/derivations.md`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finsler::{biconjugate, NormTable};
use crate::optimize::min_on_circle;
use crate::polynomial::SymbolPolynomial;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// The open half-space {x : ν·x > 0} with inward unit normal ν.
#[derive(Clone, Debug, Serialize)]
pub struct HalfSpace {
    normal: Vec<f64>,
}

impl HalfSpace {
    /// The normal is normalized on construction; a zero vector is invalid.
    pub fn new(normal: Vec<f64>) -> Result<Self> {
        let len = norm(&normal);
        if !(len > 0.0) || !len.is_finite() {
            return Err(Error::Invalid("half-space normal must be nonzero".into()));
        }
        Ok(HalfSpace {
            normal: normal.into_iter().map(|v| v / len).collect(),
        })
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        dot(&self.normal, x) > 0.0
    }
}

/// One face {x : ν·x ≤ b} of a polytope; ν is the outward unit normal.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Face {
    pub normal: Vec<f64>,
    pub offset: f64,
}

/// A convex polytope as a finite intersection of half-spaces.
#[derive(Clone, Debug, Serialize)]
pub struct ConvexPolytope {
    faces: Vec<Face>,
}

impl ConvexPolytope {
    /// Normalizes the face normals (rescaling offsets accordingly) and
    /// checks that the intersection has nonempty interior.
    pub fn new(faces: Vec<Face>) -> Result<Self> {
        if faces.is_empty() {
            return Err(Error::Invalid("a polytope needs at least one face".into()));
        }
        let mut normalized = Vec::with_capacity(faces.len());
        for f in faces {
            let len = norm(&f.normal);
            if !(len > 0.0) || !len.is_finite() {
                return Err(Error::Invalid("face normal must be nonzero".into()));
            }
            normalized.push(Face {
                normal: f.normal.iter().map(|v| v / len).collect(),
                offset: f.offset / len,
            });
        }
        let poly = ConvexPolytope { faces: normalized };
        poly.interior_point()?;
        Ok(poly)
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn dimension(&self) -> usize {
        self.faces[0].normal.len()
    }

    /// The unit square [0,1]².
    pub fn unit_square() -> Self {
        ConvexPolytope {
            faces: vec![
                Face { normal: vec![-1.0, 0.0], offset: 0.0 },
                Face { normal: vec![1.0, 0.0], offset: 1.0 },
                Face { normal: vec![0.0, -1.0], offset: 0.0 },
                Face { normal: vec![0.0, 1.0], offset: 1.0 },
            ],
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.faces
            .iter()
            .all(|f| dot(&f.normal, x) < f.offset)
    }

    /// A strictly interior point, found by subgradient descent on
    /// max_i(ν_i·x − b_i). Errors with `EmptyInterior` if none is found.
    pub fn interior_point(&self) -> Result<Vec<f64>> {
        let n = self.dimension();
        let mut x = vec![0.0; n];
        let mut best = (self.violation(&x), x.clone());
        for k in 1..=500 {
            let (v, worst) = self.worst_face(&x);
            if v < -1e-9 {
                return Ok(x);
            }
            let step = 1.0 / (k as f64).sqrt();
            for i in 0..n {
                x[i] -= step * self.faces[worst].normal[i];
            }
            let v = self.violation(&x);
            if v < best.0 {
                best = (v, x.clone());
            }
        }
        if best.0 < -1e-9 {
            Ok(best.1)
        } else {
            Err(Error::EmptyInterior)
        }
    }

    fn violation(&self, x: &[f64]) -> f64 {
        self.worst_face(x).0
    }

    fn worst_face(&self, x: &[f64]) -> (f64, usize) {
        let mut worst = (f64::NEG_INFINITY, 0);
        for (i, f) in self.faces.iter().enumerate() {
            let v = dot(&f.normal, x) - f.offset;
            if v > worst.0 {
                worst = (v, i);
            }
        }
        worst
    }

    /// Vertices of a planar polytope: pairwise face intersections that
    /// satisfy every constraint, sorted by angle around their centroid.
    pub fn vertices_2d(&self) -> Result<Vec<[f64; 2]>> {
        if self.dimension() != 2 {
            return Err(Error::UnsupportedDimension {
                got: self.dimension(),
                context: "vertex enumeration is planar",
            });
        }
        let mut verts: Vec<[f64; 2]> = Vec::new();
        let m = self.faces.len();
        for i in 0..m {
            for j in (i + 1)..m {
                let (a, b) = (&self.faces[i], &self.faces[j]);
                let det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
                if det.abs() < 1e-12 {
                    continue;
                }
                let x = (a.offset * b.normal[1] - b.offset * a.normal[1]) / det;
                let y = (a.normal[0] * b.offset - b.normal[0] * a.offset) / det;
                let p = [x, y];
                if self
                    .faces
                    .iter()
                    .all(|f| dot(&f.normal, &p) <= f.offset + 1e-9)
                    && !verts.iter().any(|q| (q[0] - x).abs() + (q[1] - y).abs() < 1e-9)
                {
                    verts.push(p);
                }
            }
        }
        if verts.len() >= 3 {
            let cx = verts.iter().map(|v| v[0]).sum::<f64>() / verts.len() as f64;
            let cy = verts.iter().map(|v| v[1]).sum::<f64>() / verts.len() as f64;
            verts.sort_by(|a, b| {
                let ta = (a[1] - cy).atan2(a[0] - cx);
                let tb = (b[1] - cy).atan2(b[0] - cx);
                ta.partial_cmp(&tb).unwrap()
            });
        }
        Ok(verts)
    }

    /// Parse the JSON interchange form `{"faces": [{"normal": [...], "offset": c}, ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Wire {
            faces: Vec<Face>,
        }
        let w: Wire =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("polytope JSON: {e}")))?;
        ConvexPolytope::new(w.faces)
    }
}

/// A domain carrying boundary distances.
#[derive(Clone, Debug, Serialize)]
pub enum Domain {
    HalfSpace(HalfSpace),
    Polytope(ConvexPolytope),
}

impl Domain {
    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            Domain::HalfSpace(h) => h.contains(x),
            Domain::Polytope(p) => p.contains(x),
        }
    }
}

/// d_ω(x) = inf{|s| : x + sω ∉ Ω}. May be +∞ for directions along which
/// the ray never exits (half-spaces, unbounded polytopes); the infimum
/// over the empty exit set is taken as +∞.
pub fn directional_distance(domain: &Domain, x: &[f64], omega: &[f64]) -> Result<f64> {
    if !domain.contains(x) {
        return Err(Error::OutsideDomain);
    }
    match domain {
        Domain::HalfSpace(h) => {
            let denom = dot(h.normal(), omega).abs();
            if denom == 0.0 {
                Ok(f64::INFINITY)
            } else {
                Ok(dot(h.normal(), x) / denom)
            }
        }
        Domain::Polytope(p) => {
            // first exit in either direction along the line x + sω
            let mut forward = f64::INFINITY;
            let mut backward = f64::INFINITY;
            for f in p.faces() {
                let speed = dot(&f.normal, omega);
                if speed == 0.0 {
                    continue;
                }
                let s = (f.offset - dot(&f.normal, x)) / speed;
                if s >= 0.0 {
                    forward = forward.min(s);
                } else {
                    backward = backward.min(-s);
                }
            }
            Ok(forward.min(backward))
        }
    }
}

/// d(x) = min over directions of d_ω(x): ν·x for a half-space,
/// min_i(b_i − ν_i·x) for a polytope.
pub fn euclidean_distance(domain: &Domain, x: &[f64]) -> Result<f64> {
    if !domain.contains(x) {
        return Err(Error::OutsideDomain);
    }
    match domain {
        Domain::HalfSpace(h) => Ok(dot(h.normal(), x)),
        Domain::Polytope(p) => Ok(p
            .faces()
            .iter()
            .map(|f| f.offset - dot(&f.normal, x))
            .fold(f64::INFINITY, f64::min)),
    }
}

/// Per-face Finsler scalings 1/F**(ν_i), precomputed so the distance
/// evaluation inside quadrature loops is a linear min.
pub struct FinslerScaling {
    inv_fss: Vec<f64>,
}

impl FinslerScaling {
    pub fn new(symbol: &SymbolPolynomial, table: &NormTable, domain: &Domain) -> Result<Self> {
        let normals: Vec<&[f64]> = match domain {
            Domain::HalfSpace(h) => vec![h.normal()],
            Domain::Polytope(p) => p.faces().iter().map(|f| f.normal.as_slice()).collect(),
        };
        let mut inv_fss = Vec::with_capacity(normals.len());
        for nu in normals {
            inv_fss.push(1.0 / biconjugate(symbol, nu, table)?);
        }
        Ok(FinslerScaling { inv_fss })
    }

    /// d_H(x); the caller guarantees x is strictly inside.
    pub fn distance(&self, domain: &Domain, x: &[f64]) -> f64 {
        match domain {
            Domain::HalfSpace(h) => dot(h.normal(), x) * self.inv_fss[0],
            Domain::Polytope(p) => p
                .faces()
                .iter()
                .zip(&self.inv_fss)
                .map(|(f, inv)| (f.offset - dot(&f.normal, x)) * inv)
                .fold(f64::INFINITY, f64::min),
        }
    }
}

/// d_H(x) = min{F*(x−y) : y ∈ ∂Ω}; computed by the per-face hyperplane
/// formula d/F**(ν).
pub fn finsler_distance(
    symbol: &SymbolPolynomial,
    table: &NormTable,
    domain: &Domain,
    x: &[f64],
) -> Result<f64> {
    if !domain.contains(x) {
        return Err(Error::OutsideDomain);
    }
    let scaling = FinslerScaling::new(symbol, table, domain)?;
    Ok(scaling.distance(domain, x))
}

/// A unit direction θ achieving min over ω of F*(ω)/|ν·ω| for a
/// half-space; then F*(θ)·d_θ(x) = d_H(x) for every interior x. Ties
/// resolve to the smallest angle.
pub fn minimizing_direction(
    symbol: &SymbolPolynomial,
    table: &NormTable,
    hs: &HalfSpace,
) -> Result<[f64; 2]> {
    table.check_symbol(symbol)?;
    if hs.normal().len() != 2 {
        return Err(Error::UnsupportedDimension {
            got: hs.normal().len(),
            context: "minimizing direction is planar",
        });
    }
    let nu = [hs.normal()[0], hs.normal()[1]];
    let mut f = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let denom = (nu[0] * c + nu[1] * s).abs();
        if denom < 1e-300 {
            return f64::INFINITY;
        }
        table.fstar_interp(theta) / denom
    };
    let (coarse_theta, _) = min_on_circle(&mut f, table.count.min(4096), 1e-12);
    // re-refine against the exact dual norm rather than the interpolant
    let exact = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let denom = (nu[0] * c + nu[1] * s).abs();
        if denom < 1e-300 {
            return f64::INFINITY;
        }
        crate::finsler::dual_norm(symbol, &[c, s], 1e-10).unwrap_or(f64::INFINITY) / denom
    };
    let h = std::f64::consts::TAU / table.count.min(4096) as f64;
    let (theta, _) = crate::optimize::golden_max(
        &mut |t| -exact(t),
        coarse_theta - h,
        coarse_theta + h,
        1e-12,
    );
    Ok([theta.cos(), theta.sin()])
}
