//! Named Lie algebras and Lie affgebras used as fixtures and examples,
//! plus a small registry so they can be built by name.

use std::collections::BTreeMap;

use crate::affgebra::LieAffgebra;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::liealg::{Frame, LieAlgebra};
use crate::linalg::{Matrix, Vector};

fn ints(field: FieldSpec, values: &[i64]) -> Vector {
    values.iter().map(|&v| field.from_i64(v)).collect()
}

/// `n`-dimensional abelian Lie algebra.
pub fn abelian(n: usize, field: FieldSpec) -> LieAlgebra {
    LieAlgebra::from_brackets(field, n, &[])
        .expect("abelian")
        .with_name(format!("abelian{n}"))
}

/// Two-dimensional non-abelian algebra `[e1, e2] = e1`.
pub fn borel(field: FieldSpec) -> LieAlgebra {
    LieAlgebra::from_brackets(field, 2, &[(0, 1, ints(field, &[1, 0]))])
        .expect("borel")
        .with_name("borel")
}

/// `sl(2)` in the Chevalley basis `(e, h, f)`.
pub fn sl2(field: FieldSpec) -> LieAlgebra {
    LieAlgebra::from_brackets(
        field,
        3,
        &[
            (0, 1, ints(field, &[-2, 0, 0])),
            (0, 2, ints(field, &[0, 1, 0])),
            (1, 2, ints(field, &[0, 0, -2])),
        ],
    )
    .expect("sl2")
    .with_name("sl2")
}

/// `so(3)` with `[x_i, x_j] = eps_ijk x_k`.
pub fn so3(field: FieldSpec) -> LieAlgebra {
    LieAlgebra::from_brackets(
        field,
        3,
        &[
            (0, 1, ints(field, &[0, 0, 1])),
            (0, 2, ints(field, &[0, -1, 0])),
            (1, 2, ints(field, &[1, 0, 0])),
        ],
    )
    .expect("so3")
    .with_name("so3")
}

/// Heisenberg algebra on `(q, p, z)` with `[q, p] = z` and `z` central.
pub fn heisenberg(field: FieldSpec) -> LieAlgebra {
    LieAlgebra::from_brackets(field, 3, &[(0, 1, ints(field, &[0, 0, 1]))])
        .expect("heisenberg")
        .with_name("heisenberg")
}

/// Names of catalog algebras known to be simple over every field of odd
/// characteristic, used to gate operations that rely on vanishing
/// cohomology.
pub const TAGGED_SIMPLE: &[&str] = &["sl2", "so3"];

pub fn is_tagged_simple(g: &LieAlgebra) -> bool {
    g.name().is_some_and(|n| TAGGED_SIMPLE.contains(&n))
}

/// Automorphism of `sl2` given by conjugation `X -> u X u^-1`, as a matrix in
/// the basis `(e, h, f)`. Returns `None` if `u` is singular.
pub fn sl2_conjugation(field: FieldSpec, u: &[&[i64]]) -> Option<Matrix> {
    let u = Matrix::from_i64(field, u);
    let inv = u.invert()?;
    let realization = sl2_matrices(field);
    let cols: Vec<Vector> = realization
        .matrices
        .iter()
        .map(|x| {
            realization
                .coordinates(&u.mul(x).mul(&inv))
                .expect("conjugation preserves sl2")
        })
        .collect();
    Some(Matrix::from_columns(field, 3, &cols))
}

fn unit_matrix(field: FieldSpec, n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    m.set(i, j, field.one());
    m
}

/// A Lie algebra of square matrices under the commutator, remembering the
/// matrix of each basis vector.
#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    pub algebra: LieAlgebra,
    pub matrices: Vec<Matrix>,
    frame: Frame,
}

impl MatrixLieAlgebra {
    /// Builds the structure constants from commutators of an independent,
    /// commutator-closed list of `size x size` matrices.
    pub fn from_matrices(
        name: &str,
        field: FieldSpec,
        size: usize,
        matrices: Vec<Matrix>,
    ) -> Result<Self> {
        let flats: Vec<Vector> = matrices.iter().map(|m| m.flat().to_vec()).collect();
        let frame = Frame::new(field, size * size, &flats)?;
        let mut structure = Vec::with_capacity(matrices.len().pow(2));
        for x in &matrices {
            for y in &matrices {
                let c = x.commutator(y);
                structure.push(frame.coordinates(c.flat()).ok_or_else(|| {
                    Error::Format(format!("{name}: span is not closed under commutators"))
                })?);
            }
        }
        let algebra = LieAlgebra::from_structure(field, matrices.len(), structure)?.with_name(name);
        Ok(MatrixLieAlgebra {
            algebra,
            matrices,
            frame,
        })
    }

    pub fn size(&self) -> usize {
        self.matrices.first().map_or(0, Matrix::rows)
    }

    /// Matrix with the given coordinates.
    pub fn matrix(&self, coords: &[Scalar]) -> Matrix {
        let n = self.size();
        Matrix::from_flat(self.algebra.field(), n, n, self.frame.vector(coords))
    }

    /// Coordinates of a matrix, or `None` if it lies outside the algebra.
    pub fn coordinates(&self, m: &Matrix) -> Option<Vector> {
        self.frame.coordinates(m.flat())
    }
}

/// `sl2` realized by `e = E_12`, `h = E_11 - E_22`, `f = E_21`.
pub fn sl2_matrices(field: FieldSpec) -> MatrixLieAlgebra {
    let mats = vec![
        Matrix::from_i64(field, &[&[0, 1], &[0, 0]]),
        Matrix::from_i64(field, &[&[1, 0], &[0, -1]]),
        Matrix::from_i64(field, &[&[0, 0], &[1, 0]]),
    ];
    MatrixLieAlgebra::from_matrices("sl2", field, 2, mats).expect("sl2 matrices")
}

/// `gl(n)` with basis `E_ij` in row-major order.
pub fn gl(n: usize, field: FieldSpec) -> MatrixLieAlgebra {
    let mats = (0..n * n)
        .map(|t| unit_matrix(field, n, t / n, t % n))
        .collect();
    MatrixLieAlgebra::from_matrices(&format!("gl{n}"), field, n, mats).expect("gl")
}

/// `sl(n)` with basis `E_ij` (`i != j`, row-major) followed by
/// `E_ii - E_(i+1)(i+1)`.
pub fn sl(n: usize, field: FieldSpec) -> MatrixLieAlgebra {
    let mut mats = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                mats.push(unit_matrix(field, n, i, j));
            }
        }
    }
    for i in 0..n.saturating_sub(1) {
        mats.push(unit_matrix(field, n, i, i).sub(&unit_matrix(field, n, i + 1, i + 1)));
    }
    MatrixLieAlgebra::from_matrices(&format!("sl{n}"), field, n, mats).expect("sl")
}

/// `A_ij = E_ij - E_i,n - E_n,j + E_n,n` for `i, j < n`, as `(n+1) x (n+1)`
/// matrices (0-based, so `n` is the last index).
pub fn a_matrix(field: FieldSpec, n: usize, i: usize, j: usize) -> Matrix {
    let size = n + 1;
    let mut m = unit_matrix(field, size, i, j);
    m = m.sub(&unit_matrix(field, size, i, n));
    m = m.sub(&unit_matrix(field, size, n, j));
    m.add(&unit_matrix(field, size, n, n))
}

/// Matrices `X` of size `n+1` with `XE = EX = 0` (`E` all ones), basis
/// `A_ij` in row-major order.
pub fn gl0(n: usize, field: FieldSpec) -> MatrixLieAlgebra {
    let mats = (0..n * n)
        .map(|t| a_matrix(field, n, t / n, t % n))
        .collect();
    MatrixLieAlgebra::from_matrices(&format!("gl0_{n}"), field, n + 1, mats).expect("gl0")
}

/// Traceless part of [`gl0`]. The basis is the canonical nullspace basis of
/// the trace functional in `A_ij` coordinates (`tr A_ii = 2`,
/// `tr A_ij = 1` otherwise): one vector per free coordinate `A_ij`, equal to
/// `A_ij - (tr A_ij / 2) A_11` when `A_11` is the pivot.
pub fn sl0(n: usize, field: FieldSpec) -> MatrixLieAlgebra {
    let traces: Vec<Scalar> = (0..n * n)
        .map(|t| field.from_i64(if t / n == t % n { 2 } else { 1 }))
        .collect();
    let kernel = Matrix::from_rows(field, vec![traces])
        .expect("trace row")
        .nullspace();
    let gl0 = gl0(n, field);
    let mats = kernel.basis().iter().map(|c| gl0.matrix(c)).collect();
    MatrixLieAlgebra::from_matrices(&format!("sl0_{n}"), field, n + 1, mats).expect("sl0")
}

/// The all-ones matrix of size `n`.
pub fn ones(field: FieldSpec, n: usize) -> Matrix {
    Matrix::from_flat(field, n, n, vec![field.one(); n * n])
}

/// Cyclic permutation matrix `E_12 + E_23 + ... + E_(n+1)1` of size `n+1`.
pub fn cyclic_matrix(field: FieldSpec, n: usize) -> Matrix {
    let size = n + 1;
    let mut m = Matrix::zeros(field, size, size);
    for i in 0..size {
        m.set(i, (i + 1) % size, field.one());
    }
    m
}

/// Size `n+1` matrix with first row all ones and row `k >= 1` equal to
/// `-1` at column `n - k` and `1` in the last column. Invertible exactly
/// when the characteristic does not divide `n + 1`.
pub fn conjugator(field: FieldSpec, n: usize) -> Matrix {
    let size = n + 1;
    let mut m = Matrix::zeros(field, size, size);
    for c in 0..size {
        m.set(0, c, field.one());
    }
    for k in 1..size {
        m.set(k, n - k, -field.one());
        m.set(k, n, field.one());
    }
    m
}

/// All ones except a zero at `(k, n - k)` for `k < n`. This is the inverse
/// of [`conjugator`] when the characteristic divides `n`; in general the
/// inverse is `(1/(n+1))` times the matrix with `-n` in those positions.
pub fn conjugator_inverse_closed_form(field: FieldSpec, n: usize) -> Matrix {
    let size = n + 1;
    let mut m = ones(field, size);
    for k in 0..n {
        m.set(k, n - k, field.zero());
    }
    m
}

/// Expected shape of `P^-1 A P`: first row `-1` except a final `0`, a
/// subdiagonal of ones in rows `1 .. n-1`, and a `1` in the bottom right.
pub fn conjugated_cyclic(field: FieldSpec, n: usize) -> Matrix {
    let size = n + 1;
    let mut m = Matrix::zeros(field, size, size);
    for c in 0..n {
        m.set(0, c, -field.one());
    }
    for r in 1..n {
        m.set(r, r - 1, field.one());
    }
    m.set(n, n, field.one());
    m
}

/// `a(gl0(n); id, id, 0)`, the general normalised affine matrices.
pub fn gna(n: usize, field: FieldSpec) -> LieAffgebra {
    let g = gl0(n, field).algebra;
    LieAffgebra::scalar(g.clone(), &field.one(), g.zero()).expect("gna")
}

/// The special normalised affine matrices as the coset `A + sl0(n)` inside
/// `a(gl(n+1); id, id, 0)`, with `A` the cyclic permutation matrix. The
/// result is `a(sl0(n); id, id + ad_A, 0)` in the basis of [`sl0`].
pub fn sna(n: usize, field: FieldSpec) -> Result<LieAffgebra> {
    let host_alg = gl(n + 1, field);
    let host = LieAffgebra::scalar(
        host_alg.algebra.clone(),
        &field.one(),
        host_alg.algebra.zero(),
    )?;
    let a = host_alg
        .coordinates(&cyclic_matrix(field, n))
        .expect("gl contains every matrix");
    let h: Vec<Vector> = sl0(n, field)
        .matrices
        .iter()
        .map(|m| host_alg.coordinates(m).expect("gl contains every matrix"))
        .collect();
    let sub = host.subaffgebra(&a, &h)?;
    let fibre = sub.fibre().clone().with_name(format!("sl0_{n}"));
    let data = sub.into_data();
    LieAffgebra::new(fibre, data.kappa, data.lambda, data.s)
}

/// `a(abelian(n); id, zeta id, 0)` with bracket `{a, b} = (1 - zeta) a + zeta b`.
pub fn action_affgebra(n: usize, field: FieldSpec, zeta: &Scalar) -> LieAffgebra {
    let g = abelian(n, field);
    LieAffgebra::new(
        g.clone(),
        Matrix::identity(field, n),
        Matrix::scalar(field, n, zeta),
        g.zero(),
    )
    .expect("abelian fibre accepts any data")
}

/// Normal-form representatives of the known classifications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// One-dimensional, `{a, b} = (kappa - lambda) a + lambda b`.
    LineFirst { kappa: Scalar, lambda: Scalar },
    /// One-dimensional, `{a, b} = (1 - lambda) a + lambda b + e`.
    LineSecond { lambda: Scalar },
    /// Borel fibre, `{x, y} = [x, y] + gamma y + sigma e2`.
    BorelFirst { gamma: Scalar, sigma: Scalar },
    /// Borel fibre, `{x, y} = [x, y] + gamma y + e1`.
    BorelSecond { gamma: Scalar },
    /// `sl2` fibre, `{x, y} = [x, y] + gamma y + e`.
    Sl2E { gamma: Scalar },
    /// `sl2` fibre, `{x, y} = [x, y] + gamma y + sigma h`.
    Sl2H { gamma: Scalar, sigma: Scalar },
    /// `sl2` fibre, `{x, y} = [x, y] + gamma y + f`.
    Sl2F { gamma: Scalar },
    /// `so3` fibre, `{x, y} = [x, y] + gamma y + sigma x1`.
    So3 { gamma: Scalar, sigma: Scalar },
}

pub fn classification_family(family: &Family) -> LieAffgebra {
    let scaled = |g: &LieAlgebra, i: usize, c: &Scalar| -> Vector {
        g.unit(i).iter().map(|x| x * c).collect()
    };
    match family {
        Family::LineFirst { kappa, lambda } => {
            let f = kappa.field();
            LieAffgebra::new(
                abelian(1, f),
                Matrix::scalar(f, 1, kappa),
                Matrix::scalar(f, 1, lambda),
                vec![f.zero()],
            )
        }
        Family::LineSecond { lambda } => {
            let f = lambda.field();
            LieAffgebra::new(
                abelian(1, f),
                Matrix::identity(f, 1),
                Matrix::scalar(f, 1, lambda),
                vec![f.one()],
            )
        }
        Family::BorelFirst { gamma, sigma } => {
            let g = borel(gamma.field());
            let s = scaled(&g, 1, sigma);
            LieAffgebra::scalar(g, gamma, s)
        }
        Family::BorelSecond { gamma } => {
            let g = borel(gamma.field());
            let s = g.unit(0);
            LieAffgebra::scalar(g, gamma, s)
        }
        Family::Sl2E { gamma } => {
            let g = sl2(gamma.field());
            let s = g.unit(0);
            LieAffgebra::scalar(g, gamma, s)
        }
        Family::Sl2H { gamma, sigma } => {
            let g = sl2(gamma.field());
            let s = scaled(&g, 1, sigma);
            LieAffgebra::scalar(g, gamma, s)
        }
        Family::Sl2F { gamma } => {
            let g = sl2(gamma.field());
            let s = g.unit(2);
            LieAffgebra::scalar(g, gamma, s)
        }
        Family::So3 { gamma, sigma } => {
            let g = so3(gamma.field());
            let s = scaled(&g, 0, sigma);
            LieAffgebra::scalar(g, gamma, s)
        }
    }
    .expect("family representatives satisfy the pair condition")
}

/// A built catalog entry.
#[derive(Clone, Debug)]
pub enum Entry {
    Algebra(LieAlgebra),
    Affgebra(LieAffgebra),
}

/// Registry listing: name, kind, accepted parameters and a description.
pub const ENTRIES: &[(&str, &str, &str, &str)] = &[
    (
        "abelian",
        "algebra",
        "field,n",
        "abelian Lie algebra of dimension n",
    ),
    ("borel", "algebra", "field", "[e1,e2] = e1"),
    (
        "sl2",
        "algebra",
        "field",
        "sl(2) in the Chevalley basis (e,h,f)",
    ),
    ("so3", "algebra", "field", "[x_i,x_j] = eps_ijk x_k"),
    ("heisenberg", "algebra", "field", "[q,p] = z, z central"),
    ("gl", "algebra", "field,n", "gl(n), basis E_ij"),
    (
        "sl",
        "algebra",
        "field,n",
        "sl(n), basis E_ij (i!=j), E_ii - E_(i+1)(i+1)",
    ),
    (
        "gl0",
        "algebra",
        "field,n",
        "(n+1)-matrices with XE = EX = 0, basis A_ij",
    ),
    ("sl0", "algebra", "field,n", "traceless part of gl0"),
    ("gna", "affgebra", "field,n", "a(gl0; id, id, 0)"),
    (
        "sna",
        "affgebra",
        "field,n",
        "A + sl0 = a(sl0; id, id + ad_A, 0)",
    ),
    (
        "action",
        "affgebra",
        "field,n,zeta",
        "{a,b} = (1 - zeta) a + zeta b",
    ),
    (
        "line1",
        "affgebra",
        "field,kappa,lambda",
        "{a,b} = (kappa - lambda) a + lambda b",
    ),
    (
        "line2",
        "affgebra",
        "field,lambda",
        "{a,b} = (1 - lambda) a + lambda b + e",
    ),
    (
        "borel1",
        "affgebra",
        "field,gamma,sigma",
        "{x,y} = [x,y] + gamma y + sigma e2",
    ),
    (
        "borel2",
        "affgebra",
        "field,gamma",
        "{x,y} = [x,y] + gamma y + e1",
    ),
    (
        "sl2e",
        "affgebra",
        "field,gamma",
        "{x,y} = [x,y] + gamma y + e",
    ),
    (
        "sl2h",
        "affgebra",
        "field,gamma,sigma",
        "{x,y} = [x,y] + gamma y + sigma h",
    ),
    (
        "sl2f",
        "affgebra",
        "field,gamma",
        "{x,y} = [x,y] + gamma y + f",
    ),
    (
        "so3fam",
        "affgebra",
        "field,gamma,sigma",
        "{x,y} = [x,y] + gamma y + sigma x1",
    ),
];

/// Parses a field name: `Q`, `F5` or a bare prime.
pub fn parse_field(text: &str) -> Result<FieldSpec> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    let digits = t
        .strip_prefix('F')
        .or_else(|| t.strip_prefix('f'))
        .unwrap_or(t);
    let p: u64 = digits
        .parse()
        .map_err(|_| Error::InvalidField(format!("{text:?} is neither Q nor a prime")))?;
    FieldSpec::prime(p)
}

/// Builds a catalog entry from string parameters. Unknown parameters are
/// rejected; missing ones take defaults (`field = Q`, `n = 2`,
/// `zeta = gamma = kappa = lambda = 1`, `sigma = 1`).
pub fn build(name: &str, params: &BTreeMap<String, String>) -> Result<Entry> {
    let (_, _, accepted, _) = ENTRIES
        .iter()
        .find(|e| e.0 == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))?;
    let accepted: Vec<&str> = accepted.split(',').collect();
    if let Some(k) = params.keys().find(|k| !accepted.contains(&k.as_str())) {
        return Err(Error::Param {
            name: k.clone(),
            reason: format!("{name} accepts {}", accepted.join(", ")),
        });
    }
    let field = params
        .get("field")
        .map(|f| parse_field(f))
        .transpose()?
        .unwrap_or(FieldSpec::Rationals);
    let n = match params.get("n") {
        Some(v) => v
            .parse::<usize>()
            .ok()
            .filter(|&n| (1..=8).contains(&n))
            .ok_or_else(|| Error::Param {
                name: "n".into(),
                reason: "expected an integer between 1 and 8".into(),
            })?,
        None => 2,
    };
    let scalar = |key: &str| -> Result<Scalar> {
        match params.get(key) {
            Some(v) => field.parse_scalar(v).map_err(|e| Error::Param {
                name: key.into(),
                reason: e.to_string(),
            }),
            None => Ok(field.one()),
        }
    };
    let entry = match name {
        "abelian" => Entry::Algebra(abelian(n, field)),
        "borel" => Entry::Algebra(borel(field)),
        "sl2" => Entry::Algebra(sl2(field)),
        "so3" => Entry::Algebra(so3(field)),
        "heisenberg" => Entry::Algebra(heisenberg(field)),
        "gl" => Entry::Algebra(gl(n, field).algebra),
        "sl" => Entry::Algebra(sl(n, field).algebra),
        "gl0" => Entry::Algebra(gl0(n, field).algebra),
        "sl0" => Entry::Algebra(sl0(n, field).algebra),
        "gna" => Entry::Affgebra(gna(n, field)),
        "sna" => Entry::Affgebra(sna(n, field)?),
        "action" => Entry::Affgebra(action_affgebra(n, field, &scalar("zeta")?)),
        _ => {
            let family = match name {
                "line1" => Family::LineFirst {
                    kappa: scalar("kappa")?,
                    lambda: scalar("lambda")?,
                },
                "line2" => Family::LineSecond {
                    lambda: scalar("lambda")?,
                },
                "borel1" => Family::BorelFirst {
                    gamma: scalar("gamma")?,
                    sigma: scalar("sigma")?,
                },
                "borel2" => Family::BorelSecond {
                    gamma: scalar("gamma")?,
                },
                "sl2e" => Family::Sl2E {
                    gamma: scalar("gamma")?,
                },
                "sl2h" => Family::Sl2H {
                    gamma: scalar("gamma")?,
                    sigma: scalar("sigma")?,
                },
                "sl2f" => Family::Sl2F {
                    gamma: scalar("gamma")?,
                },
                "so3fam" => Family::So3 {
                    gamma: scalar("gamma")?,
                    sigma: scalar("sigma")?,
                },
                _ => unreachable!("name checked against the registry"),
            };
            Entry::Affgebra(classification_family(&family))
        }
    };
    Ok(entry)
}
