//! Scalar 2-cocycles, central extensions and cocycle extensions of
//! affgebras.
//!
//! A bi-affine form `omega(a, b) = pi(a, b) + rho(a) + sigma(b) + tau` on an
//! affgebra `a(g; kappa, lambda, s)` twists the product `a x F` into an
//! affgebra exactly when `pi` is a 2-cocycle and
//! `sigma([a, b]) = pi(a, delta b) + pi(lambda a, b)` with
//! `delta = lambda - kappa`. The result is then `a(g(pi); kappa^, lambda^, s^)`
//! over the central extension, with the new basis vector `z` last.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::affgebra::{AffineBracket, LieAffgebra, Mode};
use crate::catalog;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::liealg::LieAlgebra;
use crate::linalg::{dot, random_vector, unit_vector, LinearMap, Matrix, Subspace, Vector};

/// An antisymmetric bilinear form, `pi(e_i, e_j) = matrix[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCocycle {
    matrix: Matrix,
}

impl TwoCocycle {
    /// Accepts any antisymmetric square matrix; the cocycle identity is
    /// checked separately by [`is_two_cocycle`].
    pub fn new(matrix: Matrix) -> Result<Self> {
        let n = matrix.rows();
        if matrix.cols() != n {
            return Err(Error::Dimension(format!(
                "cocycle matrix must be square, got {}x{}",
                n,
                matrix.cols()
            )));
        }
        for i in 0..n {
            for j in i..n {
                if *matrix.get(i, j) != -matrix.get(j, i) {
                    return Err(Error::NotCocycle(format!(
                        "not antisymmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(TwoCocycle { matrix })
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        TwoCocycle {
            matrix: Matrix::zeros(field, n, n),
        }
    }

    /// The form with `pi(e_i, e_j) = c = -pi(e_j, e_i)` and zero elsewhere.
    pub fn elementary(field: FieldSpec, n: usize, i: usize, j: usize, c: &Scalar) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        m.set(i, j, c.clone());
        m.set(j, i, -c);
        TwoCocycle { matrix: m }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eval(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        dot(a, &self.matrix.apply(b)).expect("dimensions checked")
    }
}

/// `pi(a, [b, c]) + pi(b, [c, a]) + pi(c, [a, b])` at the basis triple `(i, j, k)`.
fn cocycle_defect(g: &LieAlgebra, pi: &TwoCocycle, i: usize, j: usize, k: usize) -> Scalar {
    let (a, b, c) = (g.unit(i), g.unit(j), g.unit(k));
    &(&pi.eval(&a, g.basis_bracket(j, k)) + &pi.eval(&b, g.basis_bracket(k, i)))
        + &pi.eval(&c, g.basis_bracket(i, j))
}

/// First basis triple `i < j < k` where the cocycle identity fails.
pub fn cocycle_violation(g: &LieAlgebra, pi: &TwoCocycle) -> Option<(usize, usize, usize)> {
    let n = g.dim();
    (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
        .find(|&(i, j, k)| !cocycle_defect(g, pi, i, j, k).is_zero())
}

/// Checks the cocycle identity; the matrix must be antisymmetric.
pub fn is_two_cocycle(g: &LieAlgebra, pi: &Matrix) -> Result<bool> {
    let pi = TwoCocycle::new(pi.clone())?;
    check_dims(g, &pi)?;
    Ok(cocycle_violation(g, &pi).is_none())
}

fn check_dims(g: &LieAlgebra, pi: &TwoCocycle) -> Result<()> {
    if pi.dim() != g.dim() || pi.matrix.field() != g.field() {
        return Err(Error::Dimension(format!(
            "cocycle of size {} on a fibre of dimension {}",
            pi.dim(),
            g.dim()
        )));
    }
    Ok(())
}

/// `g(pi)`: `[a + x z, b + y z] = [a, b] + pi(a, b) z` with `z` central and last.
pub fn central_extension(g: &LieAlgebra, pi: &TwoCocycle) -> Result<LieAlgebra> {
    check_dims(g, pi)?;
    if let Some((i, j, k)) = cocycle_violation(g, pi) {
        return Err(Error::NotCocycle(format!(
            "cocycle identity fails at basis triple ({i}, {j}, {k})"
        )));
    }
    let n = g.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = g.basis_bracket(i, j).to_vec();
            v.push(pi.matrix.get(i, j).clone());
            brackets.push((i, j, v));
        }
    }
    let mut out = LieAlgebra::from_brackets(g.field(), n + 1, &brackets)?;
    if let Some(name) = g.name() {
        out = out.with_name(format!("{name}(pi)"));
    }
    Ok(out)
}

/// The decomposition `omega(a, b) = pi(a, b) + rho(a) + sigma(b) + tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineCocycleData {
    pub pi: TwoCocycle,
    pub rho: Vector,
    pub sigma: Vector,
    pub tau: Scalar,
}

impl AffineCocycleData {
    pub fn new(pi: TwoCocycle, rho: Vector, sigma: Vector, tau: Scalar) -> Result<Self> {
        let n = pi.dim();
        if rho.len() != n || sigma.len() != n {
            return Err(Error::Dimension(format!(
                "rho and sigma need {n} entries, got {} and {}",
                rho.len(),
                sigma.len()
            )));
        }
        Ok(AffineCocycleData {
            pi,
            rho,
            sigma,
            tau,
        })
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        AffineCocycleData {
            pi: TwoCocycle::zero(field, n),
            rho: vec![field.zero(); n],
            sigma: vec![field.zero(); n],
            tau: field.zero(),
        }
    }

    pub fn dim(&self) -> usize {
        self.pi.dim()
    }

    pub fn omega(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        let linear = &dot(&self.rho, a).expect("dims") + &dot(&self.sigma, b).expect("dims");
        &(&self.pi.eval(a, b) + &linear) + &self.tau
    }

    /// Recovers the decomposition from a bi-affine form given as a black box:
    /// `tau = w(0,0)`, `rho(a) = w(a,0) - tau`, `sigma(b) = w(0,b) - tau`,
    /// `pi(a,b) = w(a,b) - w(a,0) - w(0,b) + tau`.
    pub fn from_evaluator(
        field: FieldSpec,
        n: usize,
        omega: impl Fn(&[Scalar], &[Scalar]) -> Scalar,
    ) -> Result<Self> {
        let zero = vec![field.zero(); n];
        let tau = omega(&zero, &zero);
        let e = |i| unit_vector(field, n, i);
        let rho: Vector = (0..n).map(|i| &omega(&e(i), &zero) - &tau).collect();
        let sigma: Vector = (0..n).map(|i| &omega(&zero, &e(i)) - &tau).collect();
        let mut pi = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &(&(&omega(&e(i), &e(j)) - &rho[i]) - &sigma[j]) - &tau;
                pi.set(i, j, v);
            }
        }
        Ok(AffineCocycleData {
            pi: TwoCocycle::new(pi)?,
            rho,
            sigma,
            tau,
        })
    }
}

/// Outcome of [`affine_cocycle_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleCheck {
    /// Basis triple where the cocycle identity fails.
    pub cocycle_failure: Option<(usize, usize, usize)>,
    /// Ordered basis pair where the compatibility with `(kappa, lambda)` fails.
    pub compatibility_failure: Option<(usize, usize)>,
}

impl CocycleCheck {
    pub fn pass(&self) -> bool {
        self.cocycle_failure.is_none() && self.compatibility_failure.is_none()
    }
}

/// `sigma([a, b]) - pi(a, delta b) - pi(lambda a, b)` at a basis pair.
fn compatibility_defect(
    g: &LieAlgebra,
    delta: &LinearMap,
    lambda: &LinearMap,
    pi: &TwoCocycle,
    sigma: &[Scalar],
    i: usize,
    j: usize,
) -> Scalar {
    let (a, b) = (g.unit(i), g.unit(j));
    let lhs = dot(sigma, g.basis_bracket(i, j)).expect("dims");
    let rhs = &pi.eval(&a, &delta.apply(&b)) + &pi.eval(&lambda.apply(&a), &b);
    &lhs - &rhs
}

/// Checks that `data` defines a cocycle extension of `host`.
pub fn affine_cocycle_check(host: &LieAffgebra, data: &AffineCocycleData) -> Result<CocycleCheck> {
    let g = host.fibre();
    check_dims(g, &data.pi)?;
    let delta = host.delta();
    let n = g.dim();
    let compatibility_failure = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| {
            !compatibility_defect(g, &delta, host.lambda(), &data.pi, &data.sigma, i, j).is_zero()
        });
    Ok(CocycleCheck {
        cocycle_failure: cocycle_violation(g, &data.pi),
        compatibility_failure,
    })
}

/// Outcome of [`affine_cocycle_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaAxiomReport {
    pub antisymmetry_failure: Option<(Vector, Vector)>,
    pub jacobi_failure: Option<(Vector, Vector, Vector)>,
    pub mode: Mode,
    pub seed: u64,
}

impl OmegaAxiomReport {
    pub fn pass(&self) -> bool {
        self.antisymmetry_failure.is_none() && self.jacobi_failure.is_none()
    }
}

/// `w(a,b) - w(a,a) + w(b,a) - w(b,b)`.
pub fn omega_antisymmetry_defect(data: &AffineCocycleData, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let w = |x: &[Scalar], y: &[Scalar]| data.omega(x, y);
    &(&(&w(a, b) - &w(a, a)) + &w(b, a)) - &w(b, b)
}

/// `w(a,{b,c}) - w(a,{a,a}) + w(b,{c,a}) - w(b,{b,b}) + w(c,{a,b}) - w(c,{c,c})`.
pub fn omega_jacobi_defect(
    host: &LieAffgebra,
    data: &AffineCocycleData,
    a: &[Scalar],
    b: &[Scalar],
    c: &[Scalar],
) -> Scalar {
    let term = |x: &[Scalar], y: &[Scalar], z: &[Scalar]| {
        &data.omega(x, &host.aff_bracket(y, z)) - &data.omega(x, &host.aff_bracket(x, x))
    };
    &(&term(a, b, c) + &term(b, c, a)) + &term(c, a, b)
}

/// Evaluates the affine antisymmetry and Jacobi conditions on `omega`
/// directly, over the probe points `0`, `e_i`, `-e_i`, `e_i + e_j`, all
/// probe triples, and `extra_random` seeded random triples.
pub fn affine_cocycle_axioms(
    host: &LieAffgebra,
    data: &AffineCocycleData,
    extra_random: usize,
    seed: u64,
) -> Result<OmegaAxiomReport> {
    let g = host.fibre();
    check_dims(g, &data.pi)?;
    let (field, n) = (g.field(), g.dim());
    let mut probes = vec![g.zero()];
    for i in 0..n {
        probes.push(g.unit(i));
        probes.push(g.unit(i).iter().map(|x| -x).collect());
        for j in i + 1..n {
            probes.push(crate::linalg::add_vectors(&g.unit(i), &g.unit(j)));
        }
    }
    let mut report = OmegaAxiomReport {
        antisymmetry_failure: None,
        jacobi_failure: None,
        mode: Mode::Randomized,
        seed,
    };
    'pairs: for a in &probes {
        for b in &probes {
            if !omega_antisymmetry_defect(data, a, b).is_zero() {
                report.antisymmetry_failure = Some((a.clone(), b.clone()));
                break 'pairs;
            }
        }
    }
    'triples: for a in &probes {
        for b in &probes {
            for c in &probes {
                if !omega_jacobi_defect(host, data, a, b, c).is_zero() {
                    report.jacobi_failure = Some((a.clone(), b.clone(), c.clone()));
                    break 'triples;
                }
            }
        }
    }
    if report.pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..extra_random {
            let (a, b, c) = (
                random_vector(field, n, &mut rng),
                random_vector(field, n, &mut rng),
                random_vector(field, n, &mut rng),
            );
            if !omega_antisymmetry_defect(data, &a, &b).is_zero() {
                report.antisymmetry_failure = Some((a, b));
                break;
            }
            if !omega_jacobi_defect(host, data, &a, &b, &c).is_zero() {
                report.jacobi_failure = Some((a, b, c));
                break;
            }
        }
    }
    Ok(report)
}

/// The product `a x F` with bracket `{(a, x), (b, y)} = ({a, b}, omega(a, b))`,
/// written in coordinates `(a, x)` with `x` last.
pub struct ProductBracket<'a> {
    pub host: &'a LieAffgebra,
    pub data: &'a AffineCocycleData,
}

impl AffineBracket for ProductBracket<'_> {
    fn field(&self) -> FieldSpec {
        self.host.fibre().field()
    }

    fn dim(&self) -> usize {
        self.host.fibre().dim() + 1
    }

    fn aff_bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let n = self.host.fibre().dim();
        let mut out = self.host.aff_bracket(&a[..n], &b[..n]);
        out.push(self.data.omega(&a[..n], &b[..n]));
        out
    }
}

/// `a(g(pi); kappa^, lambda^, s^)` with
/// `kappa^(a + x z) = kappa a + (rho + sigma)(a) z`,
/// `lambda^(a + x z) = lambda a + sigma(a) z` and `s^ = s + tau z`.
pub fn cocycle_extend(host: &LieAffgebra, data: &AffineCocycleData) -> Result<LieAffgebra> {
    let check = affine_cocycle_check(host, data)?;
    if let Some((i, j, k)) = check.cocycle_failure {
        return Err(Error::NotCocycle(format!(
            "cocycle identity fails at basis triple ({i}, {j}, {k})"
        )));
    }
    if let Some((i, j)) = check.compatibility_failure {
        return Err(Error::CocycleCompatibility { i, j });
    }
    let g = host.fibre();
    let (field, n) = (g.field(), g.dim());
    let extended = central_extension(g, &data.pi)?;
    let border = |top: &Matrix, bottom: &[Scalar]| {
        let mut m = Matrix::zeros(field, n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, top.get(i, j).clone());
            }
            m.set(n, i, bottom[i].clone());
        }
        m
    };
    let rho_sigma: Vector = data
        .rho
        .iter()
        .zip(&data.sigma)
        .map(|(r, s)| r + s)
        .collect();
    let kappa = border(host.kappa(), &rho_sigma);
    let lambda = border(host.lambda(), &data.sigma);
    let mut s = host.s().to_vec();
    s.push(data.tau.clone());
    LieAffgebra::new(extended, kappa, lambda, s)
}

/// Solves a homogeneous linear system given by a linear residual on `F^vars`.
fn kernel(field: FieldSpec, vars: usize, residual: impl Fn(&[Scalar]) -> Vector) -> Subspace {
    let columns: Vec<Vector> = (0..vars)
        .map(|k| residual(&unit_vector(field, vars, k)))
        .collect();
    let rows = columns.first().map_or(0, Vec::len);
    if rows == 0 {
        return Subspace::full(field, vars);
    }
    Matrix::from_columns(field, rows, &columns).nullspace()
}

/// All `(pi, sigma)` compatible with `host`, as a subspace of `F^(n^2 + n)`
/// (entries of `pi` row-major, then `sigma`).
pub fn compatible_cocycles(host: &LieAffgebra) -> Subspace {
    let g = host.fibre();
    let (field, n) = (g.field(), g.dim());
    let delta = host.delta();
    kernel(field, n * n + n, |v| {
        let m = Matrix::from_flat(field, n, n, v[..n * n].to_vec());
        let sigma = &v[n * n..];
        let mut out: Vector = m.add(&m.transpose()).flat().to_vec();
        let pi = TwoCocycle { matrix: m };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    out.push(cocycle_defect(g, &pi, i, j, k));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                out.push(compatibility_defect(
                    g,
                    &delta,
                    host.lambda(),
                    &pi,
                    sigma,
                    i,
                    j,
                ));
            }
        }
        out
    })
}

/// Splits a vector of [`compatible_cocycles`] into `(pi, sigma)`.
pub fn split_cocycle(field: FieldSpec, n: usize, v: &[Scalar]) -> (TwoCocycle, Vector) {
    let pi = TwoCocycle {
        matrix: Matrix::from_flat(field, n, n, v[..n * n].to_vec()),
    };
    (pi, v[n * n..].to_vec())
}

/// With `pi` fixed and `sigma = 0`, all pairs `(delta, lambda)` of maps with
/// `pi(a, delta b) + pi(lambda a, b) = 0`, as a subspace of `F^(2 n^2)`
/// (entries of `delta`, then of `lambda`).
pub fn compatible_maps(g: &LieAlgebra, pi: &TwoCocycle) -> Subspace {
    let (field, n) = (g.field(), g.dim());
    let zero = vec![field.zero(); n];
    kernel(field, 2 * n * n, |v| {
        let delta = Matrix::from_flat(field, n, n, v[..n * n].to_vec());
        let lambda = Matrix::from_flat(field, n, n, v[n * n..].to_vec());
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| compatibility_defect(g, &delta, &lambda, pi, &zero, i, j))
            .collect()
    })
}

/// Pairs `(delta, lambda)` with both maps diagonal, in the layout of
/// [`compatible_maps`].
pub fn diagonal_maps(field: FieldSpec, n: usize) -> Subspace {
    let vars = 2 * n * n;
    let basis = (0..n)
        .flat_map(|i| [i * n + i, n * n + i * n + i])
        .map(|k| unit_vector(field, vars, k))
        .collect();
    Subspace::span(field, vars, basis)
}

/// One isomorphism `x -> psi (x + q)` in a normal-form reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub psi: Matrix,
    pub q: Vector,
    pub target: LieAffgebra,
    /// `iso_conditions` holds for this step.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    /// The cocycle extension before reduction.
    pub extension: LieAffgebra,
    pub steps: Vec<ReductionStep>,
    /// The reduced affgebra, over `g(0)`, with `lambda^` block-diagonal and
    /// `s^` in `g`.
    pub result: LieAffgebra,
    /// The composite of all steps, certified against `extension` and `result`.
    pub composite: (Matrix, Vector),
    pub composite_certified: bool,
}

/// Reduces the cocycle extension of an affgebra over a simple catalog fibre.
///
/// When `pi != 0` it is a coboundary `pi(a, b) = mu([a, b])`, and
/// `a + x z -> a + (x - mu(a)) z` carries the extension onto one over
/// `g(0)` in which `sigma` vanishes. The translation `q = -tau z` then
/// clears the `z` component of `s^`. Every step is checked with
/// `iso_conditions`.
pub fn simple_fibre_normal_form(
    host: &LieAffgebra,
    data: &AffineCocycleData,
) -> Result<NormalForm> {
    let g = host.fibre();
    if !catalog::is_tagged_simple(g) {
        return Err(Error::NotSimpleFibre);
    }
    let extension = cocycle_extend(host, data)?;
    let (field, n) = (g.field(), g.dim());
    let mut steps = Vec::new();
    let mut current = extension.clone();

    if !data.pi.matrix.is_zero() {
        let mu = coboundary_potential(g, &data.pi)?;
        let mut psi = Matrix::identity(field, n + 1);
        for (j, m) in mu.iter().enumerate() {
            psi.set(n, j, -m);
        }
        let q = vec![field.zero(); n + 1];
        let target = transport(
            &current,
            &central_extension(g, &TwoCocycle::zero(field, n))?,
            &psi,
            &q,
        )?;
        let certified = current.iso_conditions(&target, &psi, &q)?;
        steps.push(ReductionStep {
            psi,
            q,
            target: target.clone(),
            certified,
        });
        current = target;
    }

    let tau = current.s()[n].clone();
    if !tau.is_zero() {
        let psi = Matrix::identity(field, n + 1);
        let mut q = vec![field.zero(); n + 1];
        q[n] = -&tau;
        let fibre = current.fibre().clone();
        let target = transport(&current, &fibre, &psi, &q)?;
        let certified = current.iso_conditions(&target, &psi, &q)?;
        steps.push(ReductionStep {
            psi,
            q,
            target: target.clone(),
            certified,
        });
        current = target;
    }

    let mut psi = Matrix::identity(field, n + 1);
    let mut q = vec![field.zero(); n + 1];
    for step in &steps {
        // x -> s.psi (psi x + psi q + s.q) = (s.psi psi)(x + q + psi^-1 s.q)
        let inv = psi.invert().ok_or(Error::Singular)?;
        q = crate::linalg::add_vectors(&q, &inv.apply(&step.q));
        psi = step.psi.mul(&psi);
    }
    let composite_certified = extension.iso_conditions(&current, &psi, &q)?;
    Ok(NormalForm {
        extension,
        steps,
        result: current,
        composite: (psi, q),
        composite_certified,
    })
}

/// The structure carried from `a` along `x -> psi (x + q)` onto `fibre`:
/// `kappa' = psi kappa psi^-1`, `lambda' = psi (lambda - ad_q) psi^-1`,
/// `s' = psi (s + q - kappa q)`.
pub fn transport(
    a: &LieAffgebra,
    fibre: &LieAlgebra,
    psi: &Matrix,
    q: &[Scalar],
) -> Result<LieAffgebra> {
    let inv = psi.invert().ok_or(Error::Singular)?;
    let kappa = psi.mul(a.kappa()).mul(&inv);
    let lambda = psi.mul(&a.lambda().sub(&a.fibre().adjoint(q))).mul(&inv);
    let shifted =
        crate::linalg::sub_vectors(&crate::linalg::add_vectors(a.s(), q), &a.kappa().apply(q));
    LieAffgebra::new(fibre.clone(), kappa, lambda, psi.apply(&shifted))
}

/// A linear form `mu` with `pi(a, b) = mu([a, b])`.
pub fn coboundary_potential(g: &LieAlgebra, pi: &TwoCocycle) -> Result<Vector> {
    let n = g.dim();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let rows: Vec<Vector> = pairs
        .iter()
        .map(|&(i, j)| g.basis_bracket(i, j).to_vec())
        .collect();
    let rhs: Vector = pairs
        .iter()
        .map(|&(i, j)| pi.matrix.get(i, j).clone())
        .collect();
    let system = Matrix::from_rows(g.field(), rows)?;
    system
        .solve(&rhs)?
        .map(|(mu, _)| mu)
        .ok_or_else(|| Error::NotCocycle("not a coboundary on this fibre".into()))
}
