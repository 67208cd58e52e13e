//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line, followed by its individual
//! checks. The process exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use affgebra::affgebra::{tangent_data, verify_affine_axioms, AffgebraHom, AffineData};
use affgebra::catalog::{self, Family};
use affgebra::cocycle::{
    affine_cocycle_axioms, affine_cocycle_check, central_extension, compatible_cocycles,
    compatible_maps, diagonal_maps, simple_fibre_normal_form, split_cocycle, AffineCocycleData,
    TwoCocycle,
};
use affgebra::hull::{hull, idempotent_criterion, idempotent_on_basis};
use affgebra::isomorphism::{classify, find_isomorphism, SearchMode, SearchOptions, STATE_BOUND};
use affgebra::linalg::{add_vectors, is_zero_vector, random_vector, scale_vector, sub_vectors};
use affgebra::{
    AffineBracket, Error, FieldSpec, LieAffgebra, LieAlgebra, Matrix, Subspace, Vector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;
const F3: FieldSpec = FieldSpec::Prime(3);
const F5: FieldSpec = FieldSpec::Prime(5);

/// Random Jacobi triples checked on top of the exhaustive probe triples.
const AXIOM_EXTRA_TRIPLES: usize = 20;
/// Criterion 1 sample count.
const AXIOM_TRIALS: usize = 500;
/// Random base points per affgebra for the round-trip isomorphism.
const ROUND_TRIP_POINTS: usize = 50;
/// Random pairs added to the basis pairs in the hull checks.
const HULL_RANDOM_PAIRS: usize = 25;
/// Criterion 7 sample count.
const COCYCLE_TRIALS: usize = 200;
/// Budget of the randomized isomorphism search once exhaustive search is refused.
const RANDOM_BUDGET: u64 = 2_000_000;

struct Checks(Vec<(String, bool)>);

type Criterion = (&'static str, fn() -> Checks);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn check(&mut self, label: impl Into<String>, ok: bool) {
        self.0.push((label.into(), ok));
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_matrix(field: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_flat(field, n, n, random_vector(field, n * n, rng))
}

fn pair_vector(kappa: &Matrix, lambda: &Matrix) -> Vector {
    kappa.flat().iter().chain(lambda.flat()).cloned().collect()
}

fn fibres_up_to_three(field: FieldSpec) -> Vec<LieAlgebra> {
    vec![
        catalog::abelian(1, field),
        catalog::abelian(2, field),
        catalog::borel(field),
        catalog::abelian(3, field),
        catalog::sl2(field),
        catalog::so3(field),
        catalog::heisenberg(field),
    ]
}

fn all_fibres(field: FieldSpec) -> Vec<LieAlgebra> {
    let mut out = fibres_up_to_three(field);
    for n in 2..=3 {
        out.push(catalog::gl(n, field).algebra);
        out.push(catalog::sl(n, field).algebra);
    }
    out.push(catalog::gl0(2, field).algebra);
    out.push(catalog::sl0(2, field).algebra);
    out
}

fn label(g: &LieAlgebra) -> String {
    g.name().unwrap_or("fibre").to_string()
}

/// Random affine data: a valid pair, a random pair, or a valid pair with one
/// entry perturbed.
fn random_affine_data(g: &LieAlgebra, pairs: &Subspace, rng: &mut ChaCha8Rng) -> AffineData {
    let (field, n) = (g.field(), g.dim());
    let mut v = match rng.random_range(0..4) {
        0 | 1 => pairs.random_element(rng),
        2 => random_vector(field, 2 * n * n, rng),
        _ => {
            let mut v = pairs.random_element(rng);
            let k = rng.random_range(0..v.len());
            v[k] = &v[k] + &field.from_i64(rng.random_range(1..5));
            v
        }
    };
    let lambda = Matrix::from_flat(field, n, n, v.split_off(n * n));
    let kappa = Matrix::from_flat(field, n, n, v);
    AffineData::new(g.clone(), kappa, lambda, random_vector(field, n, rng)).expect("shapes match")
}

fn criterion_samples() -> Vec<AffineData> {
    let fibres = fibres_up_to_three(F5);
    let spaces: Vec<Subspace> = fibres.iter().map(LieAlgebra::gen_der_pairs).collect();
    let mut r = rng(1);
    (0..AXIOM_TRIALS)
        .map(|_| {
            let k = r.random_range(0..fibres.len());
            random_affine_data(&fibres[k], &spaces[k], &mut r)
        })
        .collect()
}

fn axiom_equivalence() -> Checks {
    let mut c = Checks::new();
    let samples = criterion_samples();
    let (mut valid, mut mismatches) = (0, 0);
    for (t, data) in samples.iter().enumerate() {
        let in_space = data
            .fibre
            .gen_der_pairs()
            .contains(&pair_vector(&data.kappa, &data.lambda));
        let axioms = verify_affine_axioms(data, AXIOM_EXTRA_TRIPLES, t as u64).pass();
        valid += usize::from(in_space);
        if axioms != in_space {
            mismatches += 1;
        }
    }
    c.check(
        format!(
            "{AXIOM_TRIALS} samples over F5, {valid} in the pair space, {mismatches} disagreements"
        ),
        mismatches == 0,
    );
    c.check("both outcomes exercised", valid > 0 && valid < AXIOM_TRIALS);
    c
}

fn round_trip() -> Checks {
    let mut c = Checks::new();
    let samples = criterion_samples();
    let exact = samples.iter().all(|d| {
        let t = tangent_data(d, &d.fibre.zero());
        t.kappa == d.kappa && t.lambda == d.lambda && t.s == d.s
    });
    c.check(
        format!("tangent data at 0 reproduces all {AXIOM_TRIALS} triples"),
        exact,
    );
    let mut r = rng(2);
    let (mut affgebras, mut certified, mut total) = (0, 0, 0);
    for d in samples {
        let Ok(a) = LieAffgebra::from_data(d) else {
            continue;
        };
        affgebras += 1;
        for _ in 0..ROUND_TRIP_POINTS {
            let o = loop {
                let o = random_vector(F5, a.dim(), &mut r);
                if !is_zero_vector(&o) {
                    break o;
                }
            };
            let moved = a.at_point(&o);
            let neg: Vector = o.iter().map(|x| -x).collect();
            total += 1;
            if a.iso_conditions(&moved, &Matrix::identity(F5, a.dim()), &neg)
                .unwrap_or(false)
            {
                certified += 1;
            }
        }
    }
    c.check(
        format!("{certified}/{total} base changes certified over {affgebras} affgebras"),
        total > 0 && certified == total,
    );
    c
}

// Brute-force oracles: direct evaluation of the defining identities.

fn all_matrices(field: FieldSpec, n: usize) -> impl Iterator<Item = Matrix> {
    let p = field.order().expect("finite field") as u128;
    let total = p.pow((n * n) as u32);
    (0..total).map(move |mut index| {
        let mut entries = vec![field.zero(); n * n];
        for slot in entries.iter_mut() {
            *slot = field.element((index % p) as u64);
            index /= p;
        }
        Matrix::from_flat(field, n, n, entries)
    })
}

fn image(g: &LieAlgebra, m: &Matrix) -> Vec<Vector> {
    (0..g.dim()).map(|i| m.apply(&g.unit(i))).collect()
}

fn brute_derivation(g: &LieAlgebra, d: &Matrix) -> bool {
    let im = image(g, d);
    let n = g.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let (ei, ej) = (g.unit(i), g.unit(j));
            d.apply(&g.bracket(&ei, &ej))
                == add_vectors(&g.bracket(&im[i], &ej), &g.bracket(&ei, &im[j]))
        })
    })
}

fn brute_centroid(g: &LieAlgebra, k: &Matrix) -> bool {
    let im = image(g, k);
    let n = g.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let (ei, ej) = (g.unit(i), g.unit(j));
            let lhs = k.apply(&g.bracket(&ei, &ej));
            lhs == g.bracket(&im[i], &ej) && lhs == g.bracket(&ei, &im[j])
        })
    })
}

fn brute_quasicentroid(g: &LieAlgebra, k: &Matrix) -> bool {
    let im = image(g, k);
    let n = g.dim();
    (0..n).all(|i| (0..n).all(|j| g.bracket(&im[i], &g.unit(j)) == g.bracket(&g.unit(i), &im[j])))
}

fn brute_pair(g: &LieAlgebra, kappa: &Matrix, lambda: &Matrix) -> bool {
    let (ki, li) = (image(g, kappa), image(g, lambda));
    let n = g.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let (ei, ej) = (g.unit(i), g.unit(j));
            let lhs = lambda.apply(&g.bracket(&ei, &ej));
            let rhs = add_vectors(
                &sub_vectors(&g.bracket(&li[i], &ej), &g.bracket(&ei, &ki[j])),
                &g.bracket(&ei, &li[j]),
            );
            lhs == rhs
        })
    })
}

fn count_pairs(g: &LieAlgebra) -> u64 {
    let singles: Vec<Matrix> = all_matrices(g.field(), g.dim()).collect();
    let mut count = 0;
    for kappa in &singles {
        for lambda in &singles {
            count += u64::from(brute_pair(g, kappa, lambda));
        }
    }
    count
}

fn brute_center_size(g: &LieAlgebra) -> u64 {
    let field = g.field();
    let p = field.order().unwrap();
    let n = g.dim();
    (0..p.pow(n as u32))
        .filter(|&mut_index| {
            let mut index = mut_index;
            let x: Vector = (0..n)
                .map(|_| {
                    let e = field.element(index % p);
                    index /= p;
                    e
                })
                .collect();
            (0..n).all(|i| is_zero_vector(&g.bracket(&x, &g.unit(i))))
        })
        .count() as u64
}

fn solver_dimensions() -> Checks {
    let mut c = Checks::new();
    let g = catalog::sl2(Q);
    let sl2 = (
        g.center().dim(),
        g.derived_subalgebra().dim(),
        g.derivations().dim(),
        g.centroid().dim(),
        g.quasicentroid().dim(),
        g.gen_der_pairs().dim(),
    );
    c.check(format!("sl2 over Q: {sl2:?}"), sl2 == (0, 3, 3, 1, 1, 4));
    let b = catalog::borel(Q);
    let (der, inner) = (b.derivations(), b.inner_derivations());
    c.check(
        format!(
            "borel over Q: Der dim {}, inner dim {}",
            der.dim(),
            inner.dim()
        ),
        der.dim() == 2 && der.is_subspace_of(&inner) && inner.is_subspace_of(&der),
    );
    let abelian: Vec<usize> = (1..=4)
        .map(|n| catalog::abelian(n, Q).gen_der_pairs().dim())
        .collect();
    c.check(
        format!("abelian(1..4) pair dims {abelian:?}"),
        abelian == vec![2, 8, 18, 32],
    );

    let mut brute = |g: LieAlgebra| {
        let p = g.field().order().unwrap();
        let count = |pred: &dyn Fn(&Matrix) -> bool| {
            all_matrices(g.field(), g.dim()).filter(|m| pred(m)).count() as u64
        };
        let found = [
            brute_center_size(&g),
            count(&|m| brute_derivation(&g, m)),
            count(&|m| brute_centroid(&g, m)),
            count(&|m| brute_quasicentroid(&g, m)),
            count_pairs(&g),
        ];
        let solver = [
            g.center(),
            g.derivations(),
            g.centroid(),
            g.quasicentroid(),
            g.gen_der_pairs(),
        ];
        let expected: Vec<u64> = solver.iter().map(|s| p.pow(s.dim() as u32)).collect();
        c.check(
            format!(
                "{} over {}: brute-force counts {:?} vs solver {:?}",
                label(&g),
                g.field(),
                found,
                expected
            ),
            found.as_slice() == expected.as_slice(),
        );
    };
    brute(catalog::abelian(1, F3));
    for g in [
        catalog::abelian(1, F5),
        catalog::abelian(2, F5),
        catalog::borel(F5),
    ] {
        brute(g);
    }
    c
}

fn structure_identities() -> Checks {
    let mut c = Checks::new();
    for field in [Q, F5] {
        for g in all_fibres(field) {
            let (centroid, ders) = (g.centroid(), g.derivations());
            let n = g.dim();
            let mut failures = Vec::new();
            for v in g.gen_der_pairs().basis() {
                let (kappa, lambda) = g.split_pair(v);
                if !g.kappa_power_in_qc(&kappa, 4) {
                    failures.push("kappa power outside QC");
                }
                if g.is_derivation(&lambda.sub(&kappa)) != g.in_centroid(&kappa) {
                    failures.push("derivation/centroid disagree");
                }
                for cb in centroid.basis() {
                    let cm = Matrix::from_flat(field, n, n, cb.clone());
                    for alpha in [1, 2] {
                        let shift = cm.scale(&field.from_i64(alpha));
                        if !g.is_gen_der_pair(&kappa.add(&shift), &lambda.add(&shift)) {
                            failures.push("centroid shift");
                        }
                    }
                }
                for db in ders.basis() {
                    let dm = Matrix::from_flat(field, n, n, db.clone());
                    if !g.is_gen_der_pair(&kappa, &lambda.add(&dm)) {
                        failures.push("derivation shift");
                    }
                }
            }
            c.check(
                format!("{} over {field}: {failures:?}", label(&g)),
                failures.is_empty(),
            );
        }
    }
    c
}

fn hull_case(
    c: &mut Checks,
    name: &str,
    a: &LieAffgebra,
    seed: u64,
) -> Option<affgebra::hull::HullResult> {
    let h = match hull(a) {
        Ok(h) => h,
        Err(e) => {
            c.check(format!("{name}: hull failed: {e}"), false);
            return None;
        }
    };
    let g = a.fibre();
    let mut probes = vec![g.zero()];
    probes.extend((0..g.dim()).map(|i| g.unit(i)));
    let basis_ok = h.preserves_brackets(a, &probes);
    let mut r = rng(seed);
    let random_ok = (0..HULL_RANDOM_PAIRS).all(|_| {
        let x = random_vector(g.field(), g.dim(), &mut r);
        let y = random_vector(g.field(), g.dim(), &mut r);
        is_zero_vector(&h.embedding_defect(a, &x, &y))
    });
    let ambient_ok = verify_affine_axioms(&h.ambient, AXIOM_EXTRA_TRIPLES, seed).pass()
        && h.extended.verify_lie().pass();
    c.check(
        format!(
            "{name}: basis pairs {basis_ok}, random pairs {random_ok}, ambient axioms {ambient_ok}"
        ),
        basis_ok && random_ok && ambient_ok,
    );
    Some(h)
}

fn hull_suite() -> Checks {
    let mut c = Checks::new();
    let q = |n: i64| Q.from_i64(n);

    for (k, l) in [(3, 2), (1, 5), (-2, -2)] {
        let a = catalog::classification_family(&Family::LineFirst {
            kappa: q(k),
            lambda: q(l),
        });
        if let Some(h) = hull_case(&mut c, &format!("line kappa={k} lambda={l}"), &a, 10) {
            let bracket = h.extended.basis_bracket(0, 1).to_vec();
            c.check(
                format!("line kappa={k} lambda={l}: [e, delta] = {}e", k - l),
                bracket == vec![q(k - l), q(0)],
            );
        }
    }
    let a = catalog::classification_family(&Family::LineSecond { lambda: q(4) });
    hull_case(&mut c, "line with s = e", &a, 11);

    let a = catalog::classification_family(&Family::BorelFirst {
        gamma: q(2),
        sigma: q(3),
    });
    if let Some(h) = hull_case(&mut c, "borel, delta = 0", &a, 12) {
        let central = h.extended.adjoint(&h.extended.unit(2)).is_zero();
        c.check("borel, delta = 0: delta is central in the hull", central);
    }
    let a = catalog::classification_family(&Family::BorelSecond { gamma: q(-1) });
    hull_case(&mut c, "borel with s = e1", &a, 13);

    let zeta = q(3);
    let a = catalog::action_affgebra(3, Q, &zeta);
    if let Some(h) = hull_case(&mut c, "action, zeta = 3", &a, 14) {
        let mut r = rng(15);
        let ok = (0..HULL_RANDOM_PAIRS).all(|_| {
            let (x, y) = (random_vector(Q, 4, &mut r), random_vector(Q, 4, &mut r));
            let (alpha, beta) = (&x[3], &y[3]);
            let expected = sub_vectors(&scale_vector(alpha, &y[..3]), &scale_vector(beta, &x[..3]));
            let expected = scale_vector(&(&zeta - &Q.one()), &expected);
            h.extended.bracket(&x, &y)[..3] == expected[..]
                && h.extended.bracket(&x, &y)[3].is_zero()
        });
        c.check(
            "action, zeta = 3: [a + x delta, b + y delta] = (zeta - 1)(x b - y a)",
            ok,
        );
    }

    let g = catalog::sl2(Q);
    let lambda = Matrix::identity(Q, 3).add(&g.adjoint(&[q(1), q(-2), q(3)]));
    let a = LieAffgebra::new(g.clone(), Matrix::identity(Q, 3), lambda, g.zero()).unwrap();
    c.check(
        "idempotent sl2: criterion and basis check",
        idempotent_criterion(&a) && idempotent_on_basis(&a),
    );
    if let Some(h) = hull_case(&mut c, "idempotent sl2", &a, 16) {
        let mut r = rng(17);
        let amb = &h.ambient;
        let ok = (0..HULL_RANDOM_PAIRS).all(|_| {
            let (x, y) = (random_vector(Q, 4, &mut r), random_vector(Q, 4, &mut r));
            amb.aff_bracket(&x, &y) == add_vectors(&amb.fibre().bracket(&x, &y), &y)
        });
        c.check("idempotent sl2: ambient bracket is [x, y] + y", ok);
    }
    c
}

fn char_three() -> Checks {
    let mut c = Checks::new();
    let n = 2;
    let gl0 = catalog::gl0(n, F3);
    let e = catalog::ones(F3, n + 1);
    let e_gl0 = gl0.coordinates(&e);
    let in_derived = e_gl0
        .as_ref()
        .is_some_and(|v| gl0.algebra.derived_subalgebra().contains(v));
    c.check("E lies in [gl0, gl0] over F3", in_derived);
    let sl0 = catalog::sl0(n, F3);
    let e_sl0 = sl0.coordinates(&e);
    let central = e_sl0
        .as_ref()
        .is_some_and(|v| sl0.algebra.center().contains(v));
    c.check(
        format!(
            "E spans part of Z(sl0); dim Z(sl0) = {}",
            sl0.algebra.center().dim()
        ),
        central,
    );
    let sl = catalog::sl(n, F3);
    c.check("Z(sl(2, F3)) = 0", sl.algebra.center().is_zero());

    let sna = catalog::sna(n, F3).expect("sna over F3");
    let plain = LieAffgebra::new(
        sl.algebra.clone(),
        Matrix::identity(F3, 3),
        Matrix::identity(F3, 3),
        sl.algebra.zero(),
    )
    .unwrap();
    let verdict = find_isomorphism(&sna, &plain, &SearchOptions::default()).unwrap();
    println!(
        "    sna vs a(sl; id, id, 0): {}",
        verdict.obstruction.as_deref().unwrap_or("no obstruction")
    );
    c.check(
        "sna is not isomorphic to a(sl; id, id, 0): fibres differ",
        !verdict.isomorphic() && verdict.obstruction.is_some(),
    );

    let gl = catalog::gl(n, F3);
    let meet = |g: &LieAlgebra| g.derived_subalgebra().intersection(&g.center()).dim();
    let (m0, m1) = (meet(&gl0.algebra), meet(&gl.algebra));
    c.check(
        format!("[gl0,gl0] meets Z(gl0) in dim {m0}, [gl,gl] meets Z(gl) in dim {m1}"),
        m0 > 0 && m1 == 0,
    );
    println!(
        "    gna vs a(gl; id, id, 0): not isomorphic, derived-centre meets have dims {m0} and {m1}"
    );

    let p = catalog::conjugator(Q, n);
    let inv = p.invert();
    c.check(
        "P P^-1 = I over Q",
        inv.as_ref()
            .is_some_and(|i| p.mul(i) == Matrix::identity(Q, n + 1)),
    );
    if let Some(inv) = inv {
        let blocks = catalog::sl0(n, Q).matrices.iter().all(|x| {
            let y = inv.mul(x).mul(&p);
            (0..=n).all(|k| y.get(k, n).is_zero() && y.get(n, k).is_zero())
        });
        c.check("P^-1 sl0 P has vanishing last row and column", blocks);
    }
    c
}

fn cocycle_suite() -> Checks {
    let mut c = Checks::new();
    let fibres = [
        catalog::abelian(2, F5),
        catalog::borel(F5),
        catalog::abelian(3, F5),
        catalog::sl2(F5),
        catalog::so3(F5),
        catalog::heisenberg(F5),
    ];
    let pair_spaces: Vec<Subspace> = fibres.iter().map(LieAlgebra::gen_der_pairs).collect();
    let mut r = rng(7);
    let (mut agree, mut passing) = (0, 0);
    for t in 0..COCYCLE_TRIALS {
        let k = r.random_range(0..fibres.len());
        let g = &fibres[k];
        let n = g.dim();
        let (kappa, lambda) = g.split_pair(&pair_spaces[k].random_element(&mut r));
        let host =
            LieAffgebra::new(g.clone(), kappa, lambda, random_vector(F5, n, &mut r)).unwrap();
        let (pi, sigma) = if r.random_bool(0.5) {
            split_cocycle(F5, n, &compatible_cocycles(&host).random_element(&mut r))
        } else {
            let m = random_matrix(F5, n, &mut r);
            let pi = TwoCocycle::new(m.sub(&m.transpose())).unwrap();
            (pi, random_vector(F5, n, &mut r))
        };
        let data =
            AffineCocycleData::new(pi, random_vector(F5, n, &mut r), sigma, F5.random(&mut r))
                .unwrap();
        let check = affine_cocycle_check(&host, &data).unwrap().pass();
        let direct = affine_cocycle_axioms(&host, &data, AXIOM_EXTRA_TRIPLES, t as u64)
            .unwrap()
            .pass();
        agree += usize::from(check == direct);
        passing += usize::from(direct);
    }
    c.check(
        format!("{agree}/{COCYCLE_TRIALS} data sets: check agrees with the direct axioms ({passing} satisfy them)"),
        agree == COCYCLE_TRIALS && passing > 0 && passing < COCYCLE_TRIALS,
    );

    for field in [Q, F5] {
        let plane = catalog::abelian(2, field);
        let pi = TwoCocycle::elementary(field, 2, 0, 1, &field.one());
        let space = compatible_maps(&plane, &pi);
        let diagonal = diagonal_maps(field, 2);
        let equal = space.is_subspace_of(&diagonal) && diagonal.is_subspace_of(&space);
        let witness = {
            let lambda = Matrix::from_i64(field, &[&[1, 2], &[3, 4]]);
            let delta = Matrix::from_i64(field, &[&[-4, 2], &[3, -1]]);
            pair_vector(&delta, &lambda)
        };
        c.check(
            format!(
                "Heisenberg setup over {field}: solution space (dim {}) equals diagonal pairs (dim {}): {equal}; off-diagonal solution present: {}",
                space.dim(),
                diagonal.dim(),
                space.contains(&witness)
            ),
            equal,
        );
    }

    for field in [Q, F5] {
        for g in [catalog::sl2(field), catalog::so3(field)] {
            let n = g.dim();
            let mut r = rng(8);
            for trial in 0..4 {
                let kappa_c = field.from_i64(trial + 2);
                let host =
                    LieAffgebra::scalar(g.clone(), &kappa_c, random_vector(field, n, &mut r))
                        .unwrap();
                let space = compatible_cocycles(&host);
                let (pi, sigma) = split_cocycle(field, n, &space.random_element(&mut r));
                let rho = random_vector(field, n, &mut r);
                let tau = field.from_i64(trial + 1);
                let data = AffineCocycleData::new(pi, rho.clone(), sigma, tau).unwrap();
                let name = format!("normal form, {} over {field}, trial {trial}", label(&g));
                let nf = match simple_fibre_normal_form(&host, &data) {
                    Ok(nf) => nf,
                    Err(e) => {
                        c.check(format!("{name}: {e}"), false);
                        continue;
                    }
                };
                let res = &nf.result;
                let product = central_extension(&g, &TwoCocycle::zero(field, n)).unwrap();
                let mut lambda_hat = Matrix::scalar(field, n + 1, &kappa_c);
                lambda_hat.set(n, n, field.zero());
                let kappa_block = res.kappa().top_left(n) == Matrix::scalar(field, n, &kappa_c)
                    && (0..=n).all(|i| res.kappa().get(i, n).is_zero());
                let shape = res.fibre().same_structure(&product)
                    && kappa_block
                    && *res.lambda() == lambda_hat
                    && res.s()[..n] == *host.s()
                    && res.s()[n].is_zero();
                let rho_kept = !data.pi.matrix().is_zero() || res.kappa().row(n)[..n] == rho[..];
                let (psi, q) = &nf.composite;
                let hom = AffgebraHom {
                    psi: psi.clone(),
                    q_prime: psi.apply(q),
                };
                let replay = nf.extension.hom_violation(res, &hom).is_none();
                let certified = nf.steps.iter().all(|s| s.certified) && nf.composite_certified;
                c.check(
                    format!(
                        "{name}: {} steps certified {certified}, target shape {shape}, rho {rho_kept}, replay {replay}",
                        nf.steps.len()
                    ),
                    certified && shape && rho_kept && replay,
                );
            }
        }
    }
    c
}

/// Walks every invertible `psi` and every `q`, testing `x -> psi(x + q)`
/// against the brackets directly.
fn brute_force_iso(a: &LieAffgebra, b: &LieAffgebra) -> (bool, u64) {
    let (field, n) = (a.field(), a.dim());
    let p = field.order().unwrap();
    let points: Vec<Vector> = (0..p.pow(n as u32))
        .map(|mut index| {
            (0..n)
                .map(|_| {
                    let e = field.element(index % p);
                    index /= p;
                    e
                })
                .collect()
        })
        .collect();
    let mut tried = 0;
    for psi in all_matrices(field, n).filter(|m| m.invert().is_some()) {
        for q in &points {
            tried += 1;
            let hom = AffgebraHom {
                psi: psi.clone(),
                q_prime: psi.apply(q),
            };
            if a.hom_violation(b, &hom).is_none() {
                return (true, tried);
            }
        }
    }
    (false, tried)
}

fn classification() -> Checks {
    let mut c = Checks::new();
    for field in [F3, F5] {
        let p = field.order().unwrap() as usize;
        let rows = classify(&catalog::abelian(1, field)).unwrap();
        let total: usize = rows.iter().map(|r| r.size).sum();
        let one = field.one();
        let mut pattern = true;
        for row in &rows {
            let (kappa, lambda, s) = (row.kappa.get(0, 0), row.lambda.get(0, 0), &row.s_rep[0]);
            let ok = if kappa.is_one() {
                (s.is_zero() && row.size == 1) || (!s.is_zero() && row.size == p - 1)
            } else {
                s.is_zero() && row.size == p
            };
            pattern &= ok;
            // each class matches its family representative
            let rep = if kappa.is_one() && !s.is_zero() {
                catalog::classification_family(&Family::LineSecond {
                    lambda: lambda.clone(),
                })
            } else {
                catalog::classification_family(&Family::LineFirst {
                    kappa: kappa.clone(),
                    lambda: lambda.clone(),
                })
            };
            let member = LieAffgebra::new(
                catalog::abelian(1, field),
                row.kappa.clone(),
                row.lambda.clone(),
                row.s_rep.clone(),
            )
            .unwrap();
            let found = find_isomorphism(&member, &rep, &SearchOptions::default()).unwrap();
            pattern &= found.isomorphic() && found.mode == affgebra::affgebra::Mode::Exhaustive;
        }
        let expected_classes = p * (p - 1) + 2 * p;
        c.check(
            format!("dim 1 over {field}: {} classes covering {total} triples, two-family pattern {pattern}", rows.len()),
            rows.len() == expected_classes && total == p * p * p && pattern,
        );
        let mut distinct = true;
        for lambda in 0..p as u64 {
            let first = catalog::classification_family(&Family::LineFirst {
                kappa: one.clone(),
                lambda: field.element(lambda),
            });
            let second = catalog::classification_family(&Family::LineSecond {
                lambda: field.element(lambda),
            });
            let opts = SearchOptions {
                mode: SearchMode::Exhaustive,
                ..SearchOptions::default()
            };
            let r = find_isomorphism(&first, &second, &opts).unwrap();
            let (brute, _) = brute_force_iso(&first, &second);
            distinct &= !r.isomorphic() && !brute && r.mode == affgebra::affgebra::Mode::Exhaustive;
        }
        c.check(
            format!("dim 1 over {field}: s = 0 and s = e families separated exhaustively"),
            distinct,
        );
    }

    let opts = SearchOptions {
        mode: SearchMode::Exhaustive,
        ..SearchOptions::default()
    };
    let (mut borel_ok, mut maps) = (true, 0);
    for gamma in 0..5u64 {
        let g = F5.element(gamma);
        let first = catalog::classification_family(&Family::BorelFirst {
            gamma: g.clone(),
            sigma: F5.one(),
        });
        let second = catalog::classification_family(&Family::BorelSecond { gamma: g });
        let r = find_isomorphism(&first, &second, &opts).unwrap();
        let (brute, tried) = brute_force_iso(&first, &second);
        maps += tried;
        borel_ok &= !r.isomorphic() && !brute && r.mode == affgebra::affgebra::Mode::Exhaustive;
    }
    c.check(
        format!(
            "Borel families over F5 non-isomorphic for every gamma ({maps} affine maps walked)"
        ),
        borel_ok,
    );

    let gamma = F5.from_i64(2);
    let reps = [
        (
            "e",
            catalog::classification_family(&Family::Sl2E {
                gamma: gamma.clone(),
            }),
        ),
        (
            "h",
            catalog::classification_family(&Family::Sl2H {
                gamma: gamma.clone(),
                sigma: F5.one(),
            }),
        ),
        (
            "f",
            catalog::classification_family(&Family::Sl2F {
                gamma: gamma.clone(),
            }),
        ),
    ];
    for i in 0..3 {
        for j in i + 1..3 {
            let (x, y) = (&reps[i].1, &reps[j].1);
            let name = format!("sl2 over F5, s = {} vs s = {}", reps[i].0, reps[j].0);
            let exhaustive = find_isomorphism(x, y, &opts);
            let refused = matches!(exhaustive, Err(Error::BoundExceeded { .. }));
            let verdict = match exhaustive {
                Ok(r) => r,
                Err(_) => {
                    let randomized = SearchOptions {
                        mode: SearchMode::Randomized,
                        budget: RANDOM_BUDGET,
                        seed: 5,
                    };
                    find_isomorphism(x, y, &randomized).unwrap()
                }
            };
            let how = match (&verdict.obstruction, refused) {
                (Some(reason), _) => format!("exact invariant ({reason})"),
                (None, true) => format!(
                    "bound exceeded (> {STATE_BOUND} states), randomized verdict after {} candidates, seed {}",
                    verdict.candidates, verdict.seed
                ),
                (None, false) => format!("exhaustive over {} candidates", verdict.candidates),
            };
            match &verdict.witness {
                Some((psi, q)) => {
                    let certified = x.iso_conditions(y, psi, q).unwrap_or(false);
                    c.check(
                        format!("{name}: ISOMORPHIC, witness certified {certified}; {how}"),
                        false,
                    );
                }
                None => c.check(format!("{name}: non-isomorphic; {how}"), true),
            }
        }
    }
    // The swap e <-> f is conjugation by the antidiagonal matrix.
    let swap = catalog::sl2_conjugation(F5, &[&[0, 1], &[1, 0]]).unwrap();
    let certified = reps[0]
        .1
        .iso_conditions(&reps[2].1, &swap, &[F5.zero(), F5.zero(), F5.zero()])
        .unwrap();
    println!("    explicit swap e <-> f with q = 0 certified as an isomorphism: {certified}");
    c
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("axiom equivalence", axiom_equivalence),
        ("tangent round-trip", round_trip),
        ("solver dimensions", solver_dimensions),
        (
            "structure identities of solution pairs",
            structure_identities,
        ),
        ("Lie hull", hull_suite),
        ("normalised matrices in characteristic 3", char_three),
        ("cocycle extensions", cocycle_suite),
        ("classification desk checks", classification),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed().as_secs_f64();
        let (pass, lines) = match outcome {
            Ok(checks) => (
                !checks.0.is_empty() && checks.0.iter().all(|(_, ok)| *ok),
                checks.0,
            ),
            Err(_) => (false, vec![("panicked".to_string(), false)]),
        };
        failed += usize::from(!pass);
        println!(
            "criterion {} ({title}): {} [{elapsed:.1}s]",
            k + 1,
            if pass { "PASS" } else { "FAIL" }
        );
        for (line, ok) in lines {
            println!("    {} {line}", if ok { "ok  " } else { "FAIL" });
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
