//! Lie affgebras `a(g; kappa, lambda, s)`: an affine space modelled on a Lie
//! algebra `g`, with the bi-affine bracket
//! `{a, b} = [a, b] + kappa(a) + lambda(b - a) + s`.
//!
//! Points are plain coordinate vectors. The heap operation `<a, b, c>` is
//! `a - b + c` and the affine action is `(1 - t) a + t b`, so every axiom
//! reduces to vector identities.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result, SubaffgebraCondition};
use crate::field::{FieldSpec, Scalar};
use crate::liealg::{FibreInvariants, Frame, LieAlgebra};
use crate::linalg::{
    add_vectors, is_zero_vector, random_vector, sub_vectors, LinearMap, Matrix, Subspace, Vector,
};

/// Anything that evaluates a binary operation on the points of `F^n`.
pub trait AffineBracket {
    fn field(&self) -> FieldSpec;
    fn dim(&self) -> usize;
    fn aff_bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vector;
}

/// Raw data `(g, kappa, lambda, s)` with no compatibility check. Its bracket
/// is always evaluated by the affine formula, which makes it useful for
/// probing what happens when the generalised derivation condition fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineData {
    pub fibre: LieAlgebra,
    pub kappa: LinearMap,
    pub lambda: LinearMap,
    pub s: Vector,
}

impl AffineData {
    pub fn new(fibre: LieAlgebra, kappa: LinearMap, lambda: LinearMap, s: Vector) -> Result<Self> {
        let n = fibre.dim();
        for (name, m) in [("kappa", &kappa), ("lambda", &lambda)] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Dimension(format!(
                    "{name} is {}x{}, fibre has dim {n}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != fibre.field() {
                return Err(Error::FieldMismatch {
                    expected: fibre.field().to_string(),
                    found: m.field().to_string(),
                });
            }
        }
        if s.len() != n {
            return Err(Error::Dimension(format!(
                "s has length {}, fibre has dim {n}",
                s.len()
            )));
        }
        if let Some(x) = s.iter().find(|x| x.field() != fibre.field()) {
            return Err(Error::FieldMismatch {
                expected: fibre.field().to_string(),
                found: x.field().to_string(),
            });
        }
        Ok(AffineData {
            fibre,
            kappa,
            lambda,
            s,
        })
    }
}

impl AffineBracket for AffineData {
    fn field(&self) -> FieldSpec {
        self.fibre.field()
    }

    fn dim(&self) -> usize {
        self.fibre.dim()
    }

    fn aff_bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = self.fibre.bracket(a, b);
        out = add_vectors(&out, &self.kappa.apply(a));
        out = add_vectors(&out, &self.lambda.apply(&sub_vectors(b, a)));
        add_vectors(&out, &self.s)
    }
}

/// A validated Lie affgebra: `(kappa, lambda)` satisfies
/// `lambda[a,b] = [lambda a, b] - [a, kappa b] + [a, lambda b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAffgebra {
    data: AffineData,
}

impl AffineBracket for LieAffgebra {
    fn field(&self) -> FieldSpec {
        self.data.field()
    }

    fn dim(&self) -> usize {
        self.data.dim()
    }

    fn aff_bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        self.data.aff_bracket(a, b)
    }
}

impl LieAffgebra {
    pub fn new(fibre: LieAlgebra, kappa: LinearMap, lambda: LinearMap, s: Vector) -> Result<Self> {
        Self::from_data(AffineData::new(fibre, kappa, lambda, s)?)
    }

    pub fn from_data(data: AffineData) -> Result<Self> {
        if let Some((i, j)) = data.fibre.gen_der_violation(&data.kappa, &data.lambda) {
            return Err(Error::NotGenDerPair { i, j });
        }
        Ok(LieAffgebra { data })
    }

    /// `a(g; c id, c id, s)`.
    pub fn scalar(fibre: LieAlgebra, c: &Scalar, s: Vector) -> Result<Self> {
        let m = Matrix::scalar(fibre.field(), fibre.dim(), c);
        Self::new(fibre, m.clone(), m, s)
    }

    pub fn fibre(&self) -> &LieAlgebra {
        &self.data.fibre
    }

    pub fn kappa(&self) -> &LinearMap {
        &self.data.kappa
    }

    pub fn lambda(&self) -> &LinearMap {
        &self.data.lambda
    }

    pub fn s(&self) -> &[Scalar] {
        &self.data.s
    }

    pub fn data(&self) -> &AffineData {
        &self.data
    }

    pub fn into_data(self) -> AffineData {
        self.data
    }

    /// `lambda - kappa`.
    pub fn delta(&self) -> LinearMap {
        self.data.lambda.sub(&self.data.kappa)
    }

    /// The same affgebra described from the base point `o`: the fibre is
    /// the tangent Lie algebra at `o` and the data are `tangent_data(o)`.
    pub fn at_point(&self, o: &[Scalar]) -> LieAffgebra {
        let fibre = tangent_lie(self, o);
        let t = tangent_data(self, o);
        LieAffgebra::new(fibre, t.kappa, t.lambda, t.s)
            .expect("tangent data always satisfy the pair condition")
    }

    /// Whether `x -> psi(x) + q'` is a homomorphism `self -> target`.
    pub fn is_homomorphism(&self, target: &LieAffgebra, hom: &AffgebraHom) -> bool {
        let (psi, q) = (&hom.psi, &hom.q_prime);
        if psi.rows() != target.dim() || psi.cols() != self.dim() || q.len() != target.dim() {
            return false;
        }
        if psi.field() != self.field() || target.field() != self.field() {
            return false;
        }
        if !self.fibre().is_homomorphism_to(target.fibre(), psi) {
            return false;
        }
        if psi.mul(self.kappa()) != target.kappa().mul(psi) {
            return false;
        }
        let twisted = target.fibre().adjoint(q).add(target.lambda());
        if psi.mul(self.lambda()) != twisted.mul(psi) {
            return false;
        }
        let rhs = add_vectors(&sub_vectors(target.s(), q), &target.kappa().apply(q));
        psi.apply(self.s()) == rhs
    }

    /// A pair of points with `f{a,b} != {f a, f b}`, or `None` when `hom` is
    /// a homomorphism. The defect is bi-affine, so the points `0` and `e_i`
    /// decide it. Shapes must match.
    pub fn hom_violation(
        &self,
        target: &LieAffgebra,
        hom: &AffgebraHom,
    ) -> Option<(Vector, Vector)> {
        let mut probes = vec![self.fibre().zero()];
        probes.extend((0..self.dim()).map(|i| self.fibre().unit(i)));
        for a in &probes {
            for b in &probes {
                let lhs = hom.apply(&self.aff_bracket(a, b));
                if lhs != target.aff_bracket(&hom.apply(a), &hom.apply(b)) {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    }

    /// Isomorphism test for an explicit candidate: `psi` must be a Lie
    /// isomorphism of fibres and
    /// `kappa' = psi kappa psi^-1`, `lambda' = psi (lambda - ad_q) psi^-1`,
    /// `s' = psi (s + q - kappa q)`. The affgebra isomorphism is then
    /// `x -> psi(x + q)`.
    pub fn iso_conditions(&self, target: &LieAffgebra, psi: &Matrix, q: &[Scalar]) -> Result<bool> {
        let n = self.dim();
        if psi.rows() != target.dim() || psi.cols() != n || q.len() != n {
            return Err(Error::Dimension(
                "isomorphism candidate has inconsistent dimensions".into(),
            ));
        }
        if target.field() != self.field() || psi.field() != self.field() {
            return Err(Error::FieldMismatch {
                expected: self.field().to_string(),
                found: target.field().to_string(),
            });
        }
        let inv = psi.invert().ok_or(Error::Singular)?;
        if !self.fibre().is_homomorphism_to(target.fibre(), psi) {
            return Ok(false);
        }
        if *target.kappa() != psi.mul(self.kappa()).mul(&inv) {
            return Ok(false);
        }
        let shifted = self.lambda().sub(&self.fibre().adjoint(q));
        if *target.lambda() != psi.mul(&shifted).mul(&inv) {
            return Ok(false);
        }
        let moved = sub_vectors(&add_vectors(self.s(), q), &self.kappa().apply(q));
        Ok(target.s() == psi.apply(&moved).as_slice())
    }

    /// Tests whether `a + span(basis)` is a subaffgebra and, if it is,
    /// returns it as `a(h; kappa|h, (lambda + ad_a)|h, kappa(a) - a + s)` in
    /// the coordinates of `basis`.
    pub fn subaffgebra(&self, a: &[Scalar], basis: &[Vector]) -> Result<LieAffgebra> {
        let n = self.dim();
        if a.len() != n {
            return Err(Error::Dimension(format!(
                "point has length {}, affgebra has dim {n}",
                a.len()
            )));
        }
        let frame = Frame::new(self.field(), n, basis).map_err(|e| match e {
            Error::Format(_) => Error::Subaffgebra(SubaffgebraCondition::Basis),
            other => other,
        })?;
        if !self.fibre().is_subalgebra(basis) {
            return Err(Error::Subaffgebra(SubaffgebraCondition::Subalgebra));
        }
        let offset = add_vectors(&sub_vectors(&self.kappa().apply(a), a), self.s());
        let s_h = frame
            .coordinates(&offset)
            .ok_or(Error::Subaffgebra(SubaffgebraCondition::A))?;
        let kappa_h = frame
            .restrict(self.kappa())
            .ok_or(Error::Subaffgebra(SubaffgebraCondition::B))?;
        let twisted = self.lambda().add(&self.fibre().adjoint(a));
        let lambda_h = frame
            .restrict(&twisted)
            .ok_or(Error::Subaffgebra(SubaffgebraCondition::C))?;
        let fibre = self.fibre().subalgebra(basis)?;
        LieAffgebra::new(fibre, kappa_h, lambda_h, s_h)
    }

    /// Simplicity of the fibre, which is sufficient for simplicity of the
    /// affgebra. A non-simple fibre leaves the affgebra undecided.
    pub fn simplicity_report(&self, samples: usize, seed: u64) -> SimplicityReport {
        let s = self.fibre().simplicity(samples, seed);
        SimplicityReport {
            fibre_simple: s.simple,
            mode: if s.exact {
                Mode::Exhaustive
            } else {
                Mode::Heuristic
            },
            affgebra_simple: s.simple.then_some(true),
            proper_ideal: s.proper_ideal.map(|i| i.basis().to_vec()),
            seed,
        }
    }
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Randomized,
    Heuristic,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Randomized => "randomized",
            Mode::Heuristic => "heuristic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub fibre_simple: bool,
    pub mode: Mode,
    /// `Some(true)` when simplicity follows from the fibre; never `Some(false)`.
    pub affgebra_simple: Option<bool>,
    pub proper_ideal: Option<Vec<Vector>>,
    pub seed: u64,
}

/// Affine map `x -> psi(x) + q_prime` between affgebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffgebraHom {
    pub psi: Matrix,
    pub q_prime: Vector,
}

impl AffgebraHom {
    pub fn identity(a: &LieAffgebra) -> Self {
        AffgebraHom {
            psi: Matrix::identity(a.field(), a.dim()),
            q_prime: a.fibre().zero(),
        }
    }

    pub fn apply(&self, x: &[Scalar]) -> Vector {
        add_vectors(&self.psi.apply(x), &self.q_prime)
    }

    /// `next` after `self`.
    pub fn then(&self, next: &AffgebraHom) -> AffgebraHom {
        AffgebraHom {
            psi: next.psi.mul(&self.psi),
            q_prime: next.apply(&self.q_prime),
        }
    }
}

/// Tangent data at `o`, in coordinates centred at `o`:
/// `s_o = {o,o} - o`, `lambda_o(a) = {o, o+a} - {o,o}`,
/// `kappa_o(a) = {o+a, o+a} - {o,o}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentData {
    pub kappa: LinearMap,
    pub lambda: LinearMap,
    pub s: Vector,
}

/// Reads off the tangent data of any bracket at `o` by evaluation.
pub fn tangent_data<B: AffineBracket + ?Sized>(bracket: &B, o: &[Scalar]) -> TangentData {
    let (field, n) = (bracket.field(), bracket.dim());
    let oo = bracket.aff_bracket(o, o);
    let shifted = |i: usize| {
        let mut p = o.to_vec();
        p[i] = &p[i] + &field.one();
        p
    };
    let lambda_cols: Vec<Vector> = (0..n)
        .map(|i| sub_vectors(&bracket.aff_bracket(o, &shifted(i)), &oo))
        .collect();
    let kappa_cols: Vec<Vector> = (0..n)
        .map(|i| {
            let p = shifted(i);
            sub_vectors(&bracket.aff_bracket(&p, &p), &oo)
        })
        .collect();
    TangentData {
        kappa: Matrix::from_columns(field, n, &kappa_cols),
        lambda: Matrix::from_columns(field, n, &lambda_cols),
        s: sub_vectors(&oo, o),
    }
}

/// Structure constants of `[a,b]_o = {a,b} - {a,o} + {o,o} - {o,b}` on the
/// tangent space at `o`, with `a` and `b` taken relative to `o`.
pub fn tangent_lie<B: AffineBracket + ?Sized>(bracket: &B, o: &[Scalar]) -> LieAlgebra {
    let (field, n) = (bracket.field(), bracket.dim());
    let oo = bracket.aff_bracket(o, o);
    let point = |i: usize| {
        let mut p = o.to_vec();
        p[i] = &p[i] + &field.one();
        p
    };
    let mut structure = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (point(i), point(j));
            let v = add_vectors(
                &sub_vectors(&bracket.aff_bracket(&a, &b), &bracket.aff_bracket(&a, o)),
                &sub_vectors(&oo, &bracket.aff_bracket(o, &b)),
            );
            structure.push(v);
        }
    }
    LieAlgebra::from_structure(field, n, structure).expect("consistent sizes")
}

/// First point tuple on which an affgebra axiom fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomFailure {
    Antisymmetry { a: Vector, b: Vector },
    Jacobi { a: Vector, b: Vector, c: Vector },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub failure: Option<AxiomFailure>,
    pub mode: Mode,
    pub seed: u64,
    /// Number of Jacobi triples evaluated.
    pub triples: usize,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

/// `{a,b} - {a,a} + {b,a} - {b,b}`.
pub fn antisymmetry_defect<B: AffineBracket + ?Sized>(
    bracket: &B,
    a: &[Scalar],
    b: &[Scalar],
) -> Vector {
    let x = sub_vectors(&bracket.aff_bracket(a, b), &bracket.aff_bracket(a, a));
    let y = sub_vectors(&bracket.aff_bracket(b, a), &bracket.aff_bracket(b, b));
    add_vectors(&x, &y)
}

/// `{a,{b,c}} - {a,{a,a}} + {b,{c,a}} - {b,{b,b}} + {c,{a,b}} - {c,{c,c}}`.
pub fn jacobi_defect<B: AffineBracket + ?Sized>(
    bracket: &B,
    a: &[Scalar],
    b: &[Scalar],
    c: &[Scalar],
) -> Vector {
    let term = |x: &[Scalar], y: &[Scalar], z: &[Scalar]| {
        sub_vectors(
            &bracket.aff_bracket(x, &bracket.aff_bracket(y, z)),
            &bracket.aff_bracket(x, &bracket.aff_bracket(x, x)),
        )
    };
    add_vectors(&add_vectors(&term(a, b, c), &term(b, c, a)), &term(c, a, b))
}

/// Probe points: `0`, `+-e_i` and `e_i + e_j`.
fn probe_points(field: FieldSpec, n: usize) -> Vec<Vector> {
    let mut pts = vec![crate::linalg::zero_vector(field, n)];
    for i in 0..n {
        let e = crate::linalg::unit_vector(field, n, i);
        pts.push(e.iter().map(|x| -x).collect());
        pts.push(e);
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut v = crate::linalg::zero_vector(field, n);
            v[i] = field.one();
            v[j] = field.one();
            pts.push(v);
        }
    }
    pts
}

/// Checks affine antisymmetry and the affine Jacobi identity.
///
/// Antisymmetry is a quadratic identity and is decided exactly on the
/// probe set `{0, +-e_i, e_i + e_j}`. Jacobi is checked on triples
/// `(a, b, b)` and all probe triples (while there are at most 30 000 of
/// them), then on `extra_random` seeded random triples.
pub fn verify_affine_axioms<B: AffineBracket + ?Sized>(
    bracket: &B,
    extra_random: usize,
    seed: u64,
) -> AxiomReport {
    let (field, n) = (bracket.field(), bracket.dim());
    let probes = probe_points(field, n);
    let report = |failure, triples| AxiomReport {
        failure,
        mode: Mode::Randomized,
        seed,
        triples,
    };
    for a in &probes {
        for b in &probes {
            if !is_zero_vector(&antisymmetry_defect(bracket, a, b)) {
                return report(
                    Some(AxiomFailure::Antisymmetry {
                        a: a.clone(),
                        b: b.clone(),
                    }),
                    0,
                );
            }
        }
    }
    let mut triples = 0;
    let mut check = |a: &Vector, b: &Vector, c: &Vector| {
        triples += 1;
        (!is_zero_vector(&jacobi_defect(bracket, a, b, c))).then(|| AxiomFailure::Jacobi {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
        })
    };
    for a in &probes {
        for b in &probes {
            if let Some(f) = check(a, b, b) {
                return report(Some(f), triples);
            }
        }
    }
    if probes.len().pow(3) <= 30_000 {
        for a in &probes {
            for b in &probes {
                for c in &probes {
                    if let Some(f) = check(a, b, c) {
                        return report(Some(f), triples);
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..extra_random {
        let a = random_vector(field, n, &mut rng);
        let b = random_vector(field, n, &mut rng);
        let c = random_vector(field, n, &mut rng);
        if let Some(f) = check(&a, &b, &c) {
            return report(Some(f), triples);
        }
    }
    report(None, triples)
}

/// Cheap isomorphism invariants of the fibres. Affgebras with different
/// invariants cannot be isomorphic, because isomorphic affgebras have
/// isomorphic fibres.
pub fn fibre_obstruction(
    a: &LieAffgebra,
    b: &LieAffgebra,
) -> Option<(FibreInvariants, FibreInvariants)> {
    let (x, y) = (a.fibre().invariants(), b.fibre().invariants());
    (x != y).then_some((x, y))
}

/// Points `0`, the basis vectors, and `count` random points.
pub fn sample_points(field: FieldSpec, n: usize, count: usize, seed: u64) -> Vec<Vector> {
    let mut pts = vec![crate::linalg::zero_vector(field, n)];
    pts.extend((0..n).map(|i| crate::linalg::unit_vector(field, n, i)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pts.extend((0..count).map(|_| random_vector(field, n, &mut rng)));
    pts
}

/// Whether the span of `vectors` is stable under `m`.
pub fn is_stable(m: &LinearMap, space: &Subspace) -> bool {
    space.basis().iter().all(|v| space.contains(&m.apply(v)))
}
