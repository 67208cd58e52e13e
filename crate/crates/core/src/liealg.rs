//! Finite-dimensional Lie algebras given by structure constants, and the
//! linear spaces of maps attached to them: derivations, centroid,
//! quasicentroid and the pairs `(kappa, lambda)` that carry an affine
//! bracket.
//!
//! Every solver assembles one linear system in the unknown matrix entries,
//! evaluated on basis vectors only, and returns its exact nullspace.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{
    add_vectors, is_zero_vector, random_vector, scale_vector, sub_vectors, unit_vector,
    zero_vector, LinearMap, Matrix, Subspace, Vector,
};

/// Lie algebra with basis `e_0 .. e_{n-1}` and `[e_i, e_j] = sum_k c_ij^k e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: Option<String>,
    field: FieldSpec,
    dim: usize,
    /// `structure[i * dim + j]` is the coordinate vector of `[e_i, e_j]`.
    structure: Vec<Vector>,
}

/// First basis tuple on which a Lie algebra axiom fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieFailure {
    Antisymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieReport {
    pub failure: Option<LieFailure>,
}

impl LieReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

impl LieAlgebra {
    /// Builds an algebra from the coordinate vectors of all `[e_i, e_j]`,
    /// row-major in `(i, j)`. No axioms are checked; see [`Self::verify_lie`].
    pub fn from_structure(field: FieldSpec, dim: usize, structure: Vec<Vector>) -> Result<Self> {
        if structure.len() != dim * dim || structure.iter().any(|v| v.len() != dim) {
            return Err(Error::Dimension(format!(
                "expected {dim}x{dim} brackets of length {dim}"
            )));
        }
        if let Some(x) = structure.iter().flatten().find(|x| x.field() != field) {
            return Err(Error::FieldMismatch {
                expected: field.to_string(),
                found: x.field().to_string(),
            });
        }
        Ok(LieAlgebra {
            name: None,
            field,
            dim,
            structure,
        })
    }

    /// Builds an algebra from the brackets `[e_i, e_j]` with `i < j`;
    /// antisymmetry is synthesized and unlisted pairs are zero.
    pub fn from_brackets(
        field: FieldSpec,
        dim: usize,
        brackets: &[(usize, usize, Vector)],
    ) -> Result<Self> {
        let mut structure = vec![zero_vector(field, dim); dim * dim];
        let mut seen = vec![false; dim * dim];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(Error::Dimension(format!(
                    "bracket index ({i}, {j}) out of range for dim {dim}"
                )));
            }
            if v.len() != dim {
                return Err(Error::Dimension(format!(
                    "bracket [e_{i}, e_{j}] has length {}",
                    v.len()
                )));
            }
            if i >= j {
                return Err(Error::Format(format!(
                    "bracket pairs must satisfy i < j, got ({i}, {j})"
                )));
            }
            if seen[i * dim + j] {
                return Err(Error::Format(format!(
                    "bracket pair ({i}, {j}) listed twice"
                )));
            }
            seen[i * dim + j] = true;
            if let Some(x) = v.iter().find(|x| x.field() != field) {
                return Err(Error::FieldMismatch {
                    expected: field.to_string(),
                    found: x.field().to_string(),
                });
            }
            structure[j * dim + i] = v.iter().map(|x| -x).collect();
            structure[i * dim + j] = v.clone();
        }
        Ok(LieAlgebra {
            name: None,
            field,
            dim,
            structure,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Equality of field and structure constants, ignoring the name.
    pub fn same_structure(&self, other: &LieAlgebra) -> bool {
        self.field == other.field && self.dim == other.dim && self.structure == other.structure
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Scalar] {
        &self.structure[i * self.dim + j]
    }

    /// Brackets `[e_i, e_j]` with `i < j` that are nonzero.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vector)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.basis_bracket(i, j);
                if !is_zero_vector(v) {
                    out.push((i, j, v.to_vec()));
                }
            }
        }
        out
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.field, self.dim)
    }

    pub fn unit(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim, i)
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        assert_eq!(x.len(), self.dim, "bracket argument length mismatch");
        assert_eq!(y.len(), self.dim, "bracket argument length mismatch");
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = &self.structure[i * self.dim + j];
                let coeff = xi * yj;
                for (k, ck) in c.iter().enumerate() {
                    if !ck.is_zero() {
                        out[k] = &out[k] + &coeff * ck;
                    }
                }
            }
        }
        out
    }

    /// Checked version of [`Self::bracket`] for untrusted input.
    pub fn try_bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::Dimension(format!(
                "bracket arguments have lengths {} and {}, algebra has dim {}",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        Ok(self.bracket(x, y))
    }

    /// Checks antisymmetry on basis pairs and the Jacobi identity on basis
    /// triples; by multilinearity this is complete.
    pub fn verify_lie(&self) -> LieReport {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                let sum = add_vectors(self.basis_bracket(i, j), self.basis_bracket(j, i));
                if !is_zero_vector(&sum) || (i == j && !is_zero_vector(self.basis_bracket(i, i))) {
                    return LieReport {
                        failure: Some(LieFailure::Antisymmetry { i, j }),
                    };
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !is_zero_vector(&self.jacobiator(
                        &self.unit(i),
                        &self.unit(j),
                        &self.unit(k),
                    )) {
                        return LieReport {
                            failure: Some(LieFailure::Jacobi { i, j, k }),
                        };
                    }
                }
            }
        }
        LieReport { failure: None }
    }

    /// `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]`.
    pub fn jacobiator(&self, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Vector {
        let t1 = self.bracket(a, &self.bracket(b, c));
        let t2 = self.bracket(b, &self.bracket(c, a));
        let t3 = self.bracket(c, &self.bracket(a, b));
        add_vectors(&add_vectors(&t1, &t2), &t3)
    }

    /// Matrix of `b -> [a, b]`.
    pub fn adjoint(&self, a: &[Scalar]) -> LinearMap {
        let columns: Vec<Vector> = (0..self.dim)
            .map(|j| self.bracket(a, &self.unit(j)))
            .collect();
        Matrix::from_columns(self.field, self.dim, &columns)
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(|v| is_zero_vector(v))
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim;
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            rows.extend(self.adjoint(&self.unit(i)).to_rows());
        }
        if rows.is_empty() {
            return Subspace::full(self.field, n);
        }
        Matrix::from_rows(self.field, rows)
            .expect("ad rows")
            .nullspace()
    }

    /// `[g, g]`, the span of all basis brackets.
    pub fn derived_subalgebra(&self) -> Subspace {
        Subspace::span(self.field, self.dim, self.structure.clone())
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subalgebra().is_full()
    }

    /// Smallest ideal containing the given vectors.
    pub fn ideal_closure(&self, generators: &[Vector]) -> Subspace {
        let mut current = Subspace::span(self.field, self.dim, generators.to_vec());
        loop {
            let mut vectors = current.basis().to_vec();
            for b in current.basis() {
                for i in 0..self.dim {
                    vectors.push(self.bracket(&self.unit(i), b));
                }
            }
            let next = Subspace::span(self.field, self.dim, vectors);
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// Whether the span of `vectors` is closed under the bracket.
    pub fn is_subalgebra(&self, vectors: &[Vector]) -> bool {
        let span = Subspace::span(self.field, self.dim, vectors.to_vec());
        span.basis().iter().all(|x| {
            span.basis()
                .iter()
                .all(|y| span.contains(&self.bracket(x, y)))
        })
    }

    /// Structure constants of the subalgebra spanned by an independent list
    /// of vectors, in the coordinates of that list.
    pub fn subalgebra(&self, basis: &[Vector]) -> Result<LieAlgebra> {
        let frame = Frame::new(self.field, self.dim, basis)?;
        let k = basis.len();
        let mut structure = Vec::with_capacity(k * k);
        for x in basis {
            for y in basis {
                let coords = frame
                    .coordinates(&self.bracket(x, y))
                    .ok_or_else(|| Error::Format("span is not closed under the bracket".into()))?;
                structure.push(coords);
            }
        }
        LieAlgebra::from_structure(self.field, k, structure)
    }

    /// Whether `psi` (a `dim(other) x dim(self)` matrix) preserves brackets.
    pub fn is_homomorphism_to(&self, other: &LieAlgebra, psi: &Matrix) -> bool {
        if psi.rows() != other.dim || psi.cols() != self.dim || psi.field() != self.field {
            return false;
        }
        let images: Vec<Vector> = (0..self.dim).map(|j| psi.column(j)).collect();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let lhs = psi.apply(self.basis_bracket(i, j));
                let rhs = other.bracket(&images[i], &images[j]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Solves a linear condition on `maps` unknown endomorphisms. `residual`
    /// must be linear in the maps; the returned subspace lives in
    /// `F^(maps * n^2)`, each map flattened row-major.
    fn solve_map_equations<F>(&self, maps: usize, residual: F) -> Subspace
    where
        F: Fn(&[LinearMap]) -> Vector,
    {
        let n = self.dim;
        let unknowns = maps * n * n;
        let zero_map = Matrix::zeros(self.field, n, n);
        let columns: Vec<Vector> = (0..unknowns)
            .map(|t| {
                let mut ms = vec![zero_map.clone(); maps];
                let (which, entry) = (t / (n * n), t % (n * n));
                ms[which].set(entry / n, entry % n, self.field.one());
                residual(&ms)
            })
            .collect();
        let rows = columns.first().map_or(0, Vec::len);
        if rows == 0 {
            return Subspace::full(self.field, unknowns);
        }
        Matrix::from_columns(self.field, rows, &columns).nullspace()
    }

    fn basis_images(&self, m: &LinearMap) -> Vec<Vector> {
        (0..self.dim).map(|j| m.column(j)).collect()
    }

    /// Residual of the derivation rule `D[a,b] = [Da,b] + [a,Db]` on basis pairs.
    pub fn derivation_residual(&self, d: &LinearMap) -> Vector {
        let img = self.basis_images(d);
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let lhs = d.apply(self.basis_bracket(i, j));
                let rhs = add_vectors(
                    &self.bracket(&img[i], &self.unit(j)),
                    &self.bracket(&self.unit(i), &img[j]),
                );
                out.extend(sub_vectors(&lhs, &rhs));
            }
        }
        out
    }

    pub fn is_derivation(&self, d: &LinearMap) -> bool {
        is_zero_vector(&self.derivation_residual(d))
    }

    /// Space of derivations, as a subspace of `Lin(g) = F^(n^2)`.
    pub fn derivations(&self) -> Subspace {
        self.solve_map_equations(1, |m| self.derivation_residual(&m[0]))
    }

    /// Span of the `ad_{e_i}`.
    pub fn inner_derivations(&self) -> Subspace {
        let vectors = (0..self.dim)
            .map(|i| self.adjoint(&self.unit(i)).flat().to_vec())
            .collect();
        Subspace::span(self.field, self.dim * self.dim, vectors)
    }

    fn centroid_residual(&self, k: &LinearMap) -> Vector {
        let img = self.basis_images(k);
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let outer = k.apply(self.basis_bracket(i, j));
                let left = self.bracket(&img[i], &self.unit(j));
                let right = self.bracket(&self.unit(i), &img[j]);
                out.extend(sub_vectors(&outer, &left));
                out.extend(sub_vectors(&left, &right));
            }
        }
        out
    }

    fn quasicentroid_residual(&self, k: &LinearMap) -> Vector {
        let img = self.basis_images(k);
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i..self.dim {
                let left = self.bracket(&img[i], &self.unit(j));
                let right = self.bracket(&self.unit(i), &img[j]);
                out.extend(sub_vectors(&left, &right));
            }
        }
        out
    }

    /// Maps with `k[a,b] = [ka,b] = [a,kb]`.
    pub fn centroid(&self) -> Subspace {
        self.solve_map_equations(1, |m| self.centroid_residual(&m[0]))
    }

    pub fn in_centroid(&self, k: &LinearMap) -> bool {
        is_zero_vector(&self.centroid_residual(k))
    }

    /// Maps with `[ka,b] = [a,kb]`.
    pub fn quasicentroid(&self) -> Subspace {
        self.solve_map_equations(1, |m| self.quasicentroid_residual(&m[0]))
    }

    pub fn in_quasicentroid(&self, k: &LinearMap) -> bool {
        is_zero_vector(&self.quasicentroid_residual(k))
    }

    /// Residual of `lambda[a,b] = [lambda a, b] - [a, kappa b] + [a, lambda b]`
    /// over all ordered basis pairs, `n` entries per pair.
    pub fn gen_der_residual(&self, kappa: &LinearMap, lambda: &LinearMap) -> Vector {
        let k_img = self.basis_images(kappa);
        let l_img = self.basis_images(lambda);
        let mut out = Vec::with_capacity(self.dim.pow(3));
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.extend(self.gen_der_residual_at(i, j, &k_img, &l_img, lambda));
            }
        }
        out
    }

    fn gen_der_residual_at(
        &self,
        i: usize,
        j: usize,
        k_img: &[Vector],
        l_img: &[Vector],
        lambda: &LinearMap,
    ) -> Vector {
        let (ei, ej) = (self.unit(i), self.unit(j));
        let lhs = lambda.apply(self.basis_bracket(i, j));
        let rhs = add_vectors(
            &sub_vectors(&self.bracket(&l_img[i], &ej), &self.bracket(&ei, &k_img[j])),
            &self.bracket(&ei, &l_img[j]),
        );
        sub_vectors(&lhs, &rhs)
    }

    /// First ordered basis pair on which `(kappa, lambda)` violates the
    /// generalised derivation condition.
    pub fn gen_der_violation(
        &self,
        kappa: &LinearMap,
        lambda: &LinearMap,
    ) -> Option<(usize, usize)> {
        let k_img = self.basis_images(kappa);
        let l_img = self.basis_images(lambda);
        for i in 0..self.dim {
            for j in 0..self.dim {
                if !is_zero_vector(&self.gen_der_residual_at(i, j, &k_img, &l_img, lambda)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_gen_der_pair(&self, kappa: &LinearMap, lambda: &LinearMap) -> bool {
        self.check_square(kappa)
            && self.check_square(lambda)
            && self.gen_der_violation(kappa, lambda).is_none()
    }

    fn check_square(&self, m: &LinearMap) -> bool {
        m.rows() == self.dim && m.cols() == self.dim && m.field() == self.field
    }

    /// All `(kappa, lambda)` satisfying the generalised derivation condition,
    /// as a subspace of `F^(2 n^2)`: `kappa` entries first, then `lambda`.
    pub fn gen_der_pairs(&self) -> Subspace {
        self.solve_map_equations(2, |m| self.gen_der_residual(&m[0], &m[1]))
    }

    /// Splits a vector of [`Self::gen_der_pairs`] into `(kappa, lambda)`.
    pub fn split_pair(&self, v: &[Scalar]) -> (LinearMap, LinearMap) {
        let nn = self.dim * self.dim;
        assert_eq!(v.len(), 2 * nn, "pair vector length mismatch");
        (
            Matrix::from_flat(self.field, self.dim, self.dim, v[..nn].to_vec()),
            Matrix::from_flat(self.field, self.dim, self.dim, v[nn..].to_vec()),
        )
    }

    /// Whether `kappa, kappa^2, .., kappa^max_power` all lie in the quasicentroid.
    pub fn kappa_power_in_qc(&self, kappa: &LinearMap, max_power: u32) -> bool {
        let mut power = kappa.clone();
        for _ in 0..max_power {
            if !self.in_quasicentroid(&power) {
                return false;
            }
            power = power.mul(kappa);
        }
        true
    }

    /// Searches for two linearly independent commuting elements.
    ///
    /// For each candidate `x` the whole centralizer of `x` is computed, so a
    /// candidate is decided exactly. Over `F_p` with `dim <= 3` every nonzero
    /// vector is a candidate and a `None` is a proof. Otherwise the candidates
    /// are the basis vectors, their pairwise sums and `samples` random vectors.
    pub fn abelian_pair_exists(&self, samples: usize, seed: u64) -> AbelianPairSearch {
        let exhaustive = self.enumerable();
        let candidates: Box<dyn Iterator<Item = Vector>> = if exhaustive {
            Box::new(self.all_vectors().into_iter().skip(1))
        } else {
            let mut list: Vec<Vector> = (0..self.dim).map(|i| self.unit(i)).collect();
            for i in 0..self.dim {
                for j in i + 1..self.dim {
                    list.push(add_vectors(&self.unit(i), &self.unit(j)));
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            list.extend((0..samples).map(|_| random_vector(self.field, self.dim, &mut rng)));
            Box::new(list.into_iter())
        };
        for x in candidates {
            if is_zero_vector(&x) {
                continue;
            }
            let line = Subspace::span(self.field, self.dim, vec![x.clone()]);
            if let Some(y) = self
                .adjoint(&x)
                .nullspace()
                .basis()
                .iter()
                .find(|y| !line.contains(y))
            {
                return AbelianPairSearch {
                    witness: Some((x, y.clone())),
                    exhaustive,
                };
            }
        }
        AbelianPairSearch {
            witness: None,
            exhaustive,
        }
    }

    /// Whether the algebra is simple: nonabelian, and every nonzero element
    /// generates the whole algebra as an ideal. Candidates are the basis
    /// vectors plus `samples` random vectors; over `F_p` in dim <= 3 every
    /// vector is tried.
    pub fn simplicity(&self, samples: usize, seed: u64) -> Simplicity {
        if self.dim == 0 || self.is_abelian() {
            return Simplicity {
                simple: false,
                exact: true,
                proper_ideal: None,
            };
        }
        let exhaustive = self.enumerable();
        let mut candidates: Vec<Vector> = if exhaustive {
            self.all_vectors().into_iter().skip(1).collect()
        } else {
            (0..self.dim).map(|i| self.unit(i)).collect()
        };
        if !exhaustive {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            candidates.extend((0..samples).map(|_| random_vector(self.field, self.dim, &mut rng)));
        }
        for x in candidates.iter().filter(|x| !is_zero_vector(x)) {
            let ideal = self.ideal_closure(std::slice::from_ref(x));
            if !ideal.is_full() {
                return Simplicity {
                    simple: false,
                    exact: true,
                    proper_ideal: Some(ideal),
                };
            }
        }
        // Centre and derived algebra give exact refutations too.
        Simplicity {
            simple: true,
            exact: exhaustive,
            proper_ideal: None,
        }
    }

    /// Small enough to scan every vector: `F_p` with `dim <= 3` and at most
    /// a million points.
    fn enumerable(&self) -> bool {
        self.dim <= 3
            && self
                .field
                .order()
                .is_some_and(|p| (p as u128).pow(self.dim as u32) <= 1_000_000)
    }

    fn all_vectors(&self) -> Vec<Vector> {
        let full = Subspace::full(self.field, self.dim);
        full.elements().expect("finite field").collect()
    }

    /// Dimensions that are invariant under Lie algebra isomorphism.
    pub fn invariants(&self) -> FibreInvariants {
        let center = self.center();
        let derived = self.derived_subalgebra();
        FibreInvariants {
            dim: self.dim,
            center: center.dim(),
            derived: derived.dim(),
            derived_meet_center: derived.intersection(&center).dim(),
        }
    }

    /// `c * v` helper bound to this algebra's field.
    pub fn scale(&self, c: i64, v: &[Scalar]) -> Vector {
        scale_vector(&self.field.from_i64(c), v)
    }
}

/// Result of [`LieAlgebra::abelian_pair_exists`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianPairSearch {
    pub witness: Option<(Vector, Vector)>,
    /// When true, a missing witness proves there is no 2-dim abelian subalgebra.
    pub exhaustive: bool,
}

/// Result of [`LieAlgebra::simplicity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplicity {
    pub simple: bool,
    /// False when `simple` rests on sampled candidates only.
    pub exact: bool,
    pub proper_ideal: Option<Subspace>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FibreInvariants {
    pub dim: usize,
    pub center: usize,
    pub derived: usize,
    pub derived_meet_center: usize,
}

/// An ordered, linearly independent list of vectors, used to express vectors
/// in the coordinates of a subspace basis.
#[derive(Clone, Debug)]
pub struct Frame {
    columns: Matrix,
}

impl Frame {
    pub fn new(field: FieldSpec, ambient: usize, basis: &[Vector]) -> Result<Self> {
        if basis.iter().any(|b| b.len() != ambient) {
            return Err(Error::Dimension("frame vector has wrong length".into()));
        }
        let columns = Matrix::from_columns(field, ambient, basis);
        if columns.rank() != basis.len() {
            return Err(Error::Format("frame vectors are linearly dependent".into()));
        }
        Ok(Frame { columns })
    }

    pub fn len(&self) -> usize {
        self.columns.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if self.is_empty() {
            return is_zero_vector(v).then(Vec::new);
        }
        self.columns.solve(v).ok().flatten().map(|(x, _)| x)
    }

    pub fn vector(&self, coords: &[Scalar]) -> Vector {
        self.columns.apply(coords)
    }

    /// Matrix of `f` restricted to the span of the frame, or `None` if the
    /// span is not `f`-stable.
    pub fn restrict(&self, f: &LinearMap) -> Option<LinearMap> {
        let k = self.len();
        let cols: Option<Vec<Vector>> = (0..k)
            .map(|j| self.coordinates(&f.apply(&self.columns.column(j))))
            .collect();
        Some(Matrix::from_columns(f.field(), k, &cols?))
    }
}
