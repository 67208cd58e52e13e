//! Isomorphism search between Lie affgebras over prime fields, and
//! classification of all affgebra structures on a small fibre into
//! isomorphism classes.
//!
//! A candidate fibre isomorphism `psi` fixes `q` up to a linear system:
//! `ad_q = lambda - psi^-1 lambda' psi` and
//! `(1 - kappa) q = psi^-1 s' - s`. The search therefore ranges over
//! matrices only and solves for `q`, which decides every pair `(psi, q)`.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::affgebra::{fibre_obstruction, LieAffgebra, Mode};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::liealg::LieAlgebra;
use crate::linalg::{sub_vectors, Matrix, Subspace, Vector};

/// Largest `|GL(n, p)| * p^n` accepted for exhaustive search.
pub const STATE_BOUND: u128 = 1_000_000;

/// Default number of random matrices tried in randomized mode.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Exhaustive when within [`STATE_BOUND`], randomized otherwise.
    Auto,
    /// Exhaustive or an error.
    Exhaustive,
    Randomized,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub mode: SearchMode,
    pub budget: u64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: SearchMode::Auto,
            budget: DEFAULT_BUDGET,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoSearch {
    /// `(psi, q)` with `x -> psi(x + q)` an isomorphism, checked by
    /// [`LieAffgebra::iso_conditions`].
    pub witness: Option<(Matrix, Vector)>,
    /// A missing witness is a proof only in exhaustive mode.
    pub mode: Mode,
    pub candidates: u64,
    pub seed: u64,
    /// An invariant separating the two, found before any search; the
    /// verdict is then a proof and `mode` is exhaustive.
    pub obstruction: Option<String>,
}

impl IsoSearch {
    pub fn isomorphic(&self) -> bool {
        self.witness.is_some()
    }
}

/// `|GL(n, p)|`.
pub fn gl_order(n: usize, p: u64) -> u128 {
    let q = p as u128;
    let total = q.pow(n as u32);
    (0..n as u32).map(|i| total - q.pow(i)).product()
}

/// Number of `(psi, q)` states an exhaustive search visits.
pub fn state_count(n: usize, p: u64) -> u128 {
    gl_order(n, p).saturating_mul((p as u128).pow(n as u32))
}

/// Solves for `q` once `psi` is fixed; `None` when no `q` works.
struct ShiftSolver {
    n: usize,
    /// Columns `vec(ad_{e_i})` stacked over `1 - kappa`.
    system: Matrix,
}

impl ShiftSolver {
    fn new(a: &LieAffgebra) -> Self {
        let (field, n) = (a.field_spec(), a.fibre().dim());
        let id_minus_kappa = Matrix::identity(field, n).sub(a.kappa());
        let cols: Vec<Vector> = (0..n)
            .map(|i| {
                let mut col = a.fibre().adjoint(&a.fibre().unit(i)).flat().to_vec();
                col.extend(id_minus_kappa.column(i));
                col
            })
            .collect();
        ShiftSolver {
            n,
            system: Matrix::from_columns(field, n * n + n, &cols),
        }
    }

    fn solve(
        &self,
        a: &LieAffgebra,
        b: &LieAffgebra,
        psi: &Matrix,
        psi_inv: &Matrix,
    ) -> Option<Vector> {
        if self.n == 0 {
            return Some(Vec::new());
        }
        let ad_target = a.lambda().sub(&psi_inv.mul(b.lambda()).mul(psi));
        let mut rhs = ad_target.flat().to_vec();
        rhs.extend(sub_vectors(&psi_inv.apply(b.s()), a.s()));
        debug_assert_eq!(rhs.len(), self.system.rows());
        self.system.solve(&rhs).ok().flatten().map(|(q, _)| q)
    }
}

/// Tests one candidate `psi`, returning `q` when `(psi, q)` is an isomorphism.
fn try_candidate(
    a: &LieAffgebra,
    b: &LieAffgebra,
    solver: &ShiftSolver,
    psi: &Matrix,
) -> Option<Vector> {
    if !a.fibre().is_homomorphism_to(b.fibre(), psi) {
        return None;
    }
    if psi.mul(a.kappa()) != b.kappa().mul(psi) {
        return None;
    }
    let inv = psi.invert()?;
    let q = solver.solve(a, b, psi, &inv)?;
    a.iso_conditions(b, psi, &q).ok()?.then_some(q)
}

/// Searches for an isomorphism `a -> b`.
///
/// Exhaustive mode walks every `n x n` matrix in a fixed order and is
/// refused over the rationals or when the state count exceeds
/// [`STATE_BOUND`]. Randomized mode draws `budget` seeded random matrices.
pub fn find_isomorphism(
    a: &LieAffgebra,
    b: &LieAffgebra,
    options: &SearchOptions,
) -> Result<IsoSearch> {
    let field = a.field_spec();
    if b.field_spec() != field {
        return Err(Error::FieldMismatch {
            expected: field.to_string(),
            found: b.field_spec().to_string(),
        });
    }
    let n = a.fibre().dim();
    let exhaustive = match (options.mode, field.order()) {
        (SearchMode::Randomized, _) => false,
        (_, None) => return Err(Error::NeedsFiniteField),
        (SearchMode::Exhaustive, Some(p)) => {
            let states = state_count(n, p);
            if states > STATE_BOUND {
                return Err(Error::BoundExceeded {
                    states,
                    bound: STATE_BOUND,
                });
            }
            true
        }
        (SearchMode::Auto, Some(p)) => state_count(n, p) <= STATE_BOUND,
    };
    let mode = if exhaustive {
        Mode::Exhaustive
    } else {
        Mode::Randomized
    };
    let mut result = IsoSearch {
        witness: None,
        mode,
        candidates: 0,
        seed: options.seed,
        obstruction: None,
    };
    if n != b.fibre().dim() {
        result.mode = Mode::Exhaustive;
        result.obstruction = Some(format!("dimensions differ: {} vs {}", n, b.fibre().dim()));
        return Ok(result);
    }
    if let Some((x, y)) = fibre_obstruction(a, b) {
        result.mode = Mode::Exhaustive;
        result.obstruction = Some(format!("fibre invariants differ: {x:?} vs {y:?}"));
        return Ok(result);
    }
    if let Some(reason) = scalar_centreless_obstruction(a, b) {
        result.mode = Mode::Exhaustive;
        result.obstruction = Some(reason);
        return Ok(result);
    }
    let solver = ShiftSolver::new(a);
    if exhaustive {
        let p = field.order().expect("finite");
        let total = (p as u128).pow((n * n) as u32);
        for index in 0..total {
            let psi = matrix_from_index(field, n, index);
            result.candidates += 1;
            if let Some(q) = try_candidate(a, b, &solver, &psi) {
                result.witness = Some((psi, q));
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        for _ in 0..options.budget {
            let entries = (0..n * n).map(|_| field.random(&mut rng)).collect();
            let psi = Matrix::from_flat(field, n, n, entries);
            result.candidates += 1;
            if let Some(q) = try_candidate(a, b, &solver, &psi) {
                result.witness = Some((psi, q));
                break;
            }
        }
    }
    Ok(result)
}

/// The `index`-th `n x n` matrix over `F_p`, entries read as base-`p`
/// digits in row-major order (first entry most significant).
fn matrix_from_index(field: FieldSpec, n: usize, mut index: u128) -> Matrix {
    let p = field.order().expect("finite") as u128;
    let mut entries = vec![field.zero(); n * n];
    for slot in entries.iter_mut().rev() {
        *slot = field.element((index % p) as u64);
        index /= p;
    }
    Matrix::from_flat(field, n, n, entries)
}

/// Exact non-isomorphism test for affgebras with `kappa = lambda = c id`
/// over a centreless fibre. Any isomorphism then has `q = 0` and
/// `s' = psi(s)` for a fibre automorphism `psi`, so the ranks of the powers
/// of `ad_s` are invariants. Returns the differing rank sequences, or
/// `None` when the test does not apply or is inconclusive.
pub fn scalar_centreless_obstruction(a: &LieAffgebra, b: &LieAffgebra) -> Option<String> {
    let n = a.fibre().dim();
    if b.fibre().dim() != n || !a.fibre().center().is_zero() {
        return None;
    }
    let scalar_of = |x: &LieAffgebra| -> Option<Scalar> {
        let c = x.kappa().get(0, 0).clone();
        let m = Matrix::scalar(x.field_spec(), n, &c);
        (*x.kappa() == m && *x.lambda() == m).then_some(c)
    };
    let (ca, cb) = (scalar_of(a)?, scalar_of(b)?);
    if ca != cb {
        return Some(format!("kappa differs: {ca} id vs {cb} id"));
    }
    if fibre_obstruction(a, b).is_some() {
        return None;
    }
    let ranks = |x: &LieAffgebra| -> Vec<usize> {
        let ad = x.fibre().adjoint(x.s());
        (1..=n as u32).map(|k| ad.pow(k).rank()).collect()
    };
    let (ra, rb) = (ranks(a), ranks(b));
    (ra != rb).then(|| format!("ranks of powers of ad_s differ: {ra:?} vs {rb:?}"))
}

/// One isomorphism class of a classification table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRow {
    pub class_id: usize,
    pub size: usize,
    pub kappa: Matrix,
    pub lambda: Matrix,
    pub s_rep: Vector,
}

/// Largest number of structures [`classify`] will enumerate.
pub const CLASSIFY_BOUND: u128 = 200_000;

/// Enumerates every affgebra structure `(kappa, lambda, s)` on `fibre`
/// over `F_p` and groups them into isomorphism classes.
///
/// Classes are orbits of the group of pairs `(psi, q)` with `psi` a fibre
/// automorphism, acting by
/// `(kappa, lambda, s) -> (psi kappa psi^-1, psi (lambda - ad_q) psi^-1, psi (s + q - kappa q))`.
/// Rows come in order of first appearance; each representative is the
/// first member met in the enumeration.
pub fn classify(fibre: &LieAlgebra) -> Result<Vec<ClassRow>> {
    let field = fibre.field();
    let p = field.order().ok_or(Error::NeedsFiniteField)?;
    let n = fibre.dim();
    let pairs = fibre.gen_der_pairs();
    let points = Subspace::full(field, n);
    let total = (p as u128).pow((pairs.dim() + n) as u32);
    if total > CLASSIFY_BOUND {
        return Err(Error::BoundExceeded {
            states: total,
            bound: CLASSIFY_BOUND,
        });
    }
    let group_size = (p as u128).pow((n * n) as u32);
    if group_size.saturating_mul(p as u128) > STATE_BOUND * 10 {
        return Err(Error::BoundExceeded {
            states: group_size,
            bound: STATE_BOUND,
        });
    }
    let automorphisms: Vec<(Matrix, Matrix)> = (0..group_size)
        .map(|i| matrix_from_index(field, n, i))
        .filter(|m| fibre.is_homomorphism_to(fibre, m))
        .filter_map(|m| m.invert().map(|inv| (m, inv)))
        .collect();
    let shifts: Vec<Vector> = points.elements().expect("finite").collect();
    let shift_ads: Vec<Matrix> = shifts.iter().map(|q| fibre.adjoint(q)).collect();

    let key = |k: &Matrix, l: &Matrix, s: &[Scalar]| -> Vec<u64> {
        k.flat()
            .iter()
            .chain(l.flat())
            .chain(s)
            .map(|x| x.residue().expect("finite"))
            .collect()
    };
    let mut class_of: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut rows = Vec::new();
    for pair in pairs.elements().expect("finite") {
        let (kappa, lambda) = fibre.split_pair(&pair);
        for s in points.elements().expect("finite") {
            if class_of.contains_key(&key(&kappa, &lambda, &s)) {
                continue;
            }
            let id = rows.len();
            let mut size = 0;
            let id_minus_kappa = Matrix::identity(field, n).sub(&kappa);
            for (psi, inv) in &automorphisms {
                let k2 = psi.mul(&kappa).mul(inv);
                for (q, ad_q) in shifts.iter().zip(&shift_ads) {
                    let l2 = psi.mul(&lambda.sub(ad_q)).mul(inv);
                    let moved: Vector = s
                        .iter()
                        .zip(id_minus_kappa.apply(q))
                        .map(|(a, b)| a + &b)
                        .collect();
                    let s2 = psi.apply(&moved);
                    if class_of.insert(key(&k2, &l2, &s2), id).is_none() {
                        size += 1;
                    }
                }
            }
            rows.push(ClassRow {
                class_id: id,
                size,
                kappa: kappa.clone(),
                lambda: lambda.clone(),
                s_rep: s.clone(),
            });
        }
    }
    Ok(rows)
}

impl LieAffgebra {
    fn field_spec(&self) -> FieldSpec {
        self.fibre().field()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, Family};

    const F3: FieldSpec = FieldSpec::Prime(3);
    const F5: FieldSpec = FieldSpec::Prime(5);

    fn line(field: FieldSpec, k: i64, l: i64, s: i64) -> LieAffgebra {
        LieAffgebra::new(
            catalog::abelian(1, field),
            Matrix::scalar(field, 1, &field.from_i64(k)),
            Matrix::scalar(field, 1, &field.from_i64(l)),
            vec![field.from_i64(s)],
        )
        .unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(gl_order(1, 5), 4);
        assert_eq!(gl_order(2, 3), 48);
        assert_eq!(gl_order(2, 5), 480);
        assert_eq!(gl_order(3, 5), 1_488_000);
        assert!(state_count(3, 5) > STATE_BOUND);
        assert!(state_count(2, 7) <= STATE_BOUND);
        // brute-force count of invertible 2x2 matrices over F_3
        let invertible = (0..81u128)
            .filter(|&i| matrix_from_index(F3, 2, i).invert().is_some())
            .count();
        assert_eq!(invertible as u128, gl_order(2, 3));
    }

    #[test]
    fn self_isomorphism() {
        let a = line(F5, 2, 3, 1);
        let r = find_isomorphism(
            &a,
            &a,
            &SearchOptions {
                mode: SearchMode::Exhaustive,
                ..Default::default()
            },
        )
        .unwrap();
        let (psi, q) = r.witness.unwrap();
        assert_eq!(psi, Matrix::identity(F5, 1));
        assert_eq!(q, vec![F5.zero()]);
        assert_eq!(r.mode, Mode::Exhaustive);
    }

    #[test]
    fn different_line_families_are_not_isomorphic() {
        let a = classification_line_first(F5, 2, 3);
        let b = catalog::classification_family(&Family::LineSecond {
            lambda: F5.from_i64(3),
        });
        let r = find_isomorphism(
            &a,
            &b,
            &SearchOptions {
                mode: SearchMode::Exhaustive,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(!r.isomorphic());
        assert_eq!(r.mode, Mode::Exhaustive);
        assert_eq!(r.candidates, 5);
    }

    fn classification_line_first(field: FieldSpec, k: i64, l: i64) -> LieAffgebra {
        catalog::classification_family(&Family::LineFirst {
            kappa: field.from_i64(k),
            lambda: field.from_i64(l),
        })
    }

    #[test]
    fn twisted_copy_is_found() {
        let g = catalog::borel(F3);
        let pairs = g.gen_der_pairs();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (k, l) = g.split_pair(&pairs.random_element(&mut rng));
        let s = crate::linalg::random_vector(F3, 2, &mut rng);
        let a = LieAffgebra::new(g.clone(), k.clone(), l.clone(), s.clone()).unwrap();
        // automorphism (x, y) of the form [[a, b], [0, 1]]
        let psi = Matrix::from_i64(F3, &[&[2, 1], &[0, 1]]);
        let inv = psi.invert().unwrap();
        let q = vec![F3.one(), F3.from_i64(2)];
        let k2 = psi.mul(&k).mul(&inv);
        let l2 = psi.mul(&l.sub(&g.adjoint(&q))).mul(&inv);
        let s2 = psi.apply(&sub_vectors(
            &crate::linalg::add_vectors(&s, &q),
            &k.apply(&q),
        ));
        let b = LieAffgebra::new(g, k2, l2, s2).unwrap();
        let r = find_isomorphism(
            &a,
            &b,
            &SearchOptions {
                mode: SearchMode::Exhaustive,
                ..Default::default()
            },
        )
        .unwrap();
        let (psi, q) = r.witness.unwrap();
        assert!(a.iso_conditions(&b, &psi, &q).unwrap());
    }

    #[test]
    fn refusals() {
        let q = FieldSpec::Rationals;
        let a = LieAffgebra::scalar(catalog::sl2(q), &q.one(), catalog::sl2(q).zero()).unwrap();
        assert_eq!(
            find_isomorphism(&a, &a, &SearchOptions::default()),
            Err(Error::NeedsFiniteField)
        );
        let b = catalog::classification_family(&Family::Sl2E { gamma: F5.one() });
        let err = find_isomorphism(
            &b,
            &b,
            &SearchOptions {
                mode: SearchMode::Exhaustive,
                ..Default::default()
            },
        );
        assert!(matches!(err, Err(Error::BoundExceeded { .. })));
        let r = find_isomorphism(
            &b,
            &b,
            &SearchOptions {
                mode: SearchMode::Auto,
                budget: 10,
                seed: 1,
            },
        )
        .unwrap();
        assert_eq!(r.mode, Mode::Randomized);
    }

    #[test]
    fn scalar_gamma_separates() {
        let a = catalog::classification_family(&Family::Sl2E {
            gamma: F5.from_i64(1),
        });
        let b = catalog::classification_family(&Family::Sl2E {
            gamma: F5.from_i64(2),
        });
        assert!(scalar_centreless_obstruction(&a, &b).is_some());
        let c = catalog::classification_family(&Family::Sl2H {
            gamma: F5.one(),
            sigma: F5.one(),
        });
        assert!(scalar_centreless_obstruction(&a, &c).is_some());
        let f = catalog::classification_family(&Family::Sl2F { gamma: F5.one() });
        assert!(scalar_centreless_obstruction(&a, &f).is_none());
    }

    #[test]
    fn line_classification_matches_pairwise_search() {
        let rows = classify(&catalog::abelian(1, F3)).unwrap();
        assert_eq!(rows.iter().map(|r| r.size).sum::<usize>(), 27);
        let class_of = |k: i64, l: i64, s: i64| {
            let a = line(F3, k, l, s);
            rows.iter()
                .position(|r| {
                    let rep = LieAffgebra::new(
                        catalog::abelian(1, F3),
                        r.kappa.clone(),
                        r.lambda.clone(),
                        r.s_rep.clone(),
                    )
                    .unwrap();
                    find_isomorphism(
                        &rep,
                        &a,
                        &SearchOptions {
                            mode: SearchMode::Exhaustive,
                            ..Default::default()
                        },
                    )
                    .unwrap()
                    .isomorphic()
                })
                .unwrap()
        };
        for k in 0..3 {
            for l in 0..3 {
                for s in 0..3 {
                    let a = line(F3, k, l, s);
                    let expected = rows
                        .iter()
                        .position(|r| {
                            r.kappa == *a.kappa() && r.lambda == *a.lambda() && {
                                let rep = LieAffgebra::new(
                                    catalog::abelian(1, F3),
                                    r.kappa.clone(),
                                    r.lambda.clone(),
                                    r.s_rep.clone(),
                                )
                                .unwrap();
                                find_isomorphism(&rep, &a, &SearchOptions::default())
                                    .unwrap()
                                    .isomorphic()
                            }
                        })
                        .unwrap();
                    assert_eq!(class_of(k, l, s), expected);
                }
            }
        }
    }
}
