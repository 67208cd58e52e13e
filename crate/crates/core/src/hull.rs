//! Derivation-type affgebras and their Lie hulls.
//!
//! When `kappa = k id`, the map `delta = lambda - k id` is a derivation and
//! the affgebra sits inside the semidirect product `g(delta) = g + F delta`
//! as the coset `g + delta`, with bracket
//! `{x, y} = [x, y] + k x + k (y - x) + s + (1 - k) delta`.

use crate::affgebra::{AffineBracket, LieAffgebra};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::liealg::LieAlgebra;
use crate::linalg::{add_vectors, is_zero_vector, sub_vectors, LinearMap, Matrix, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationType {
    /// `lambda - kappa` is a derivation of the fibre.
    pub derivation: bool,
    /// `kappa` lies in the centroid.
    pub centroid: bool,
}

impl DerivationType {
    pub fn holds(&self) -> bool {
        self.derivation && self.centroid
    }

    /// The two tests agree, as they must for a valid affgebra.
    pub fn consistent(&self) -> bool {
        self.derivation == self.centroid
    }
}

/// Tests `lambda - kappa` for being a derivation and `kappa` for lying in
/// the centroid, independently.
pub fn derivation_type(a: &LieAffgebra) -> DerivationType {
    DerivationType {
        derivation: a.fibre().is_derivation(&a.delta()),
        centroid: a.fibre().in_centroid(a.kappa()),
    }
}

pub fn is_derivation_type(a: &LieAffgebra) -> bool {
    derivation_type(a).holds()
}

/// `Some(k)` when `kappa = k id`. For a zero-dimensional fibre the scalar
/// is taken to be `1`.
pub fn scalar_kappa(a: &LieAffgebra) -> Option<Scalar> {
    let n = a.fibre().dim();
    let field = a.fibre().field();
    let k = if n == 0 {
        field.one()
    } else {
        a.kappa().get(0, 0).clone()
    };
    (*a.kappa() == Matrix::scalar(field, n, &k)).then_some(k)
}

/// First basis pair `(i, j)`, `i < j`, where `d` breaks the Leibniz rule.
pub fn derivation_violation(g: &LieAlgebra, d: &LinearMap) -> Option<(usize, usize)> {
    let n = g.dim();
    let residual = g.derivation_residual(d);
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    pairs
        .zip(residual.chunks(n.max(1)))
        .find(|(_, chunk)| !is_zero_vector(chunk))
        .map(|(pair, _)| pair)
}

/// The semidirect product `g(delta)`: dimension `n + 1`, with `delta` as
/// the last basis vector, `[delta, x] = delta(x)` and `[x, delta] = -delta(x)`.
pub fn semidirect_by_derivation(g: &LieAlgebra, delta: &LinearMap) -> Result<LieAlgebra> {
    let n = g.dim();
    if delta.rows() != n || delta.cols() != n {
        return Err(Error::Dimension(format!(
            "derivation must be {n}x{n}, got {}x{}",
            delta.rows(),
            delta.cols()
        )));
    }
    if let Some((i, j)) = derivation_violation(g, delta) {
        return Err(Error::NotDerivation { i, j });
    }
    let field = g.field();
    let pad = |v: &[Scalar]| -> Vector {
        let mut w = v.to_vec();
        w.push(field.zero());
        w
    };
    let mut brackets: Vec<(usize, usize, Vector)> = g
        .nonzero_brackets()
        .into_iter()
        .filter(|(i, j, _)| i < j)
        .map(|(i, j, v)| (i, j, pad(&v)))
        .collect();
    for i in 0..n {
        let image = delta.column(i);
        if !is_zero_vector(&image) {
            brackets.push((i, n, pad(&image.iter().map(|x| -x).collect::<Vec<_>>())));
        }
    }
    let mut out = LieAlgebra::from_brackets(field, n + 1, &brackets)?;
    if let Some(name) = g.name() {
        out = out.with_name(format!("{name}(delta)"));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullResult {
    /// `g(delta)`, with `delta` last.
    pub extended: LieAlgebra,
    pub ambient: LieAffgebra,
    /// Image of the origin, namely `delta`.
    pub offset: Vector,
}

impl HullResult {
    /// `a -> a + delta`.
    pub fn embed(&self, a: &[Scalar]) -> Vector {
        add_vectors(&pad(a, &self.offset[0].field().zero()), &self.offset)
    }

    /// `{a + delta, b + delta} - ({a, b} + delta)` computed in the ambient affgebra.
    pub fn embedding_defect(&self, original: &LieAffgebra, a: &[Scalar], b: &[Scalar]) -> Vector {
        let lhs = self.ambient.aff_bracket(&self.embed(a), &self.embed(b));
        sub_vectors(&lhs, &self.embed(&original.aff_bracket(a, b)))
    }

    /// Checks the embedding on all pairs drawn from `points`.
    pub fn preserves_brackets(&self, original: &LieAffgebra, points: &[Vector]) -> bool {
        points.iter().all(|a| {
            points
                .iter()
                .all(|b| is_zero_vector(&self.embedding_defect(original, a, b)))
        })
    }
}

fn pad(a: &[Scalar], zero: &Scalar) -> Vector {
    let mut v = a.to_vec();
    v.push(zero.clone());
    v
}

/// The Lie hull of an affgebra with scalar `kappa`.
pub fn hull(a: &LieAffgebra) -> Result<HullResult> {
    let Some(k) = scalar_kappa(a) else {
        return Err(Error::HullHypothesis {
            derivation_type: is_derivation_type(a),
        });
    };
    let g = a.fibre();
    let (field, n) = (g.field(), g.dim());
    let delta = a.delta();
    let extended = semidirect_by_derivation(g, &delta)?;
    let mut s = pad(a.s(), &field.zero());
    s[n] = &field.one() - &k;
    let scalar = Matrix::scalar(field, n + 1, &k);
    let ambient = LieAffgebra::new(extended.clone(), scalar.clone(), scalar, s)?;
    let offset = crate::linalg::unit_vector(field, n + 1, n);
    let result = HullResult {
        extended,
        ambient,
        offset,
    };
    let mut probes = vec![g.zero()];
    probes.extend((0..n).map(|i| g.unit(i)));
    debug_assert!(result.preserves_brackets(a, &probes));
    Ok(result)
}

/// `{a, a} = a` for every `a`, which holds exactly when `kappa = id` and
/// `s = 0`.
pub fn idempotent_criterion(a: &LieAffgebra) -> bool {
    let field = a.fibre().field();
    *a.kappa() == Matrix::identity(field, a.fibre().dim()) && is_zero_vector(a.s())
}

/// `{0, 0} = 0` and `{e_i, e_i} = e_i` for every basis vector.
pub fn idempotent_on_basis(a: &LieAffgebra) -> bool {
    let g = a.fibre();
    let zero = g.zero();
    is_zero_vector(&a.aff_bracket(&zero, &zero))
        && (0..g.dim()).all(|i| {
            let e = g.unit(i);
            a.aff_bracket(&e, &e) == e
        })
}
