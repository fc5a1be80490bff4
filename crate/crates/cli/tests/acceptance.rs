//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::Rng;

use freelocus::eval::{evaluate, symbolic_generic_det, EvalMode, MatrixTuple};
use freelocus::freealg::{Alphabet, FreePoly, MatrixPoly, Word};
use freelocus::hermitian::{
    gleichstellensatz_hermitian, gradient_conjugation_check, real_containment_analytic, real_containment_montecarlo,
    unsignatured_search, verify_hermitian_equivalence, Side, RealContainmentVerdict, UnsignaturedVerdict,
};
use freelocus::linalg::random::{random_invertible, random_matrix, random_scalar, seeded, SeededRng};
use freelocus::linalg::{DenseMatrix, Scalar, Signature};
use freelocus::linearize::{epic_linearization, linearize, minimize, LinearPencil, LinearizationResult};
use freelocus::slack::{
    generator, is_member, is_normal, psatz_spot_check, reduce, reduce_randomized, sample_hard_zero_consistency,
    verify_psatz, Membership, PsatzCertificate,
};
use freelocus::structure::{
    contain_intersection, is_atom, is_indecomposable, locus_contains, pencil_equiv, stabilizer_dim, stable_assoc,
    verify_equivalence, verify_joint_witness, verify_refutation, ContainMode, ContainOptions, ContainmentStatus,
    ContainmentVerdict, IndecomposableVerdict, RefutationWitness, StableAssocVerdict,
};
use freelocus::{Budget, Error};
use freelocus_cli::expr::{parse, Expr};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<f64, String> {
    let s = start.elapsed().as_secs_f64();
    ensure(start.elapsed() < limit, || format!("took {s:.1} s, limit {} s", limit.as_secs()))?;
    Ok(s)
}

fn x(k: u32) -> FreePoly {
    FreePoly::x(k)
}

fn xs(k: u32) -> FreePoly {
    FreePoly::x_star(k)
}

fn c(v: i64, a: Alphabet) -> FreePoly {
    FreePoly::constant(Scalar::from_int(v), a)
}

fn m(p: &FreePoly) -> MatrixPoly {
    MatrixPoly::from_free(p)
}

fn random_poly(rng: &mut SeededRng, alphabet: Alphabet, deg: usize, terms: usize, complex: bool) -> FreePoly {
    let letters = alphabet.letters();
    let mut p = FreePoly::zero(alphabet);
    for _ in 0..rng.gen_range(1..=terms) {
        let len = if letters.is_empty() { 0 } else { rng.gen_range(0..=deg) };
        let w = Word::new((0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect());
        p.add_term(w, &random_scalar(rng, 4, complex));
    }
    p
}

fn random_analytic(rng: &mut SeededRng, g: u32, deg: usize, terms: usize) -> FreePoly {
    loop {
        let p = random_poly(rng, Alphabet::analytic(g), deg, terms, false);
        if !p.is_constant() {
            return p;
        }
    }
}

/// `det f(X)·αⁿ = det L(X)` by direct evaluation, independent of the
/// modular check inside the library.
fn determinant_identity(f: &MatrixPoly, r: &LinearizationResult, rng: &mut SeededRng) -> Result<usize, String> {
    let g = f.alphabet().join(r.pencil.alphabet()).nvars as usize;
    let l = r.pencil.to_matrix_poly();
    let mut points = 0;
    for n in 1..=3 {
        for _ in 0..10 {
            let x = MatrixTuple::random(rng, g, n, 5, true, EvalMode::Free);
            let lhs = &evaluate(f, &x).map_err(|e| e.to_string())?.det() * &r.alpha.pow(n as u32);
            let rhs = if r.pencil.size() == 0 { Scalar::one() } else { evaluate(&l, &x).map_err(|e| e.to_string())?.det() };
            ensure(lhs == rhs, || format!("{f} at {x:?}: {lhs} vs {rhs}"))?;
            points += 1;
        }
    }
    Ok(points)
}

fn c1_linearization_identity() -> Check {
    let start = Instant::now();
    let mut rng = seeded(1);
    let mut points = 0;
    for k in 0..200 {
        let g = rng.gen_range(1..=3);
        let alphabet = if k % 2 == 0 { Alphabet::analytic(g) } else { Alphabet::involutive(g) };
        let f = m(&random_poly(&mut rng, alphabet, 3, 6, k % 3 == 0));
        let raw = linearize(&f).map_err(|e| e.to_string())?;
        points += determinant_identity(&f, &raw, &mut rng)?;
        match epic_linearization(&f) {
            Ok(epic) => points += determinant_identity(&f, &epic, &mut rng)?,
            Err(Error::NotFull) => ensure(f.is_zero(), || format!("{f} reported not full"))?,
            Err(e) => return Err(e.to_string()),
        }
    }
    let s = within(start, Duration::from_secs(60))?;
    Ok(format!("200 polynomials, {points} exact point checks, {s:.1} s"))
}

fn c2_commutator_fixture() -> Check {
    let f = m(&(&(&x(0) * &x(1)) - &(&x(1) * &x(0))));
    let r = minimize(&linearize(&f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let a0 = DenseMatrix::from_ints(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 0]]);
    let a1 = DenseMatrix::from_ints(&[&[0, 0, 0], &[0, 0, 1], &[1, 0, 0]]);
    let a2 = DenseMatrix::from_ints(&[&[0, 0, 1], &[0, 0, 0], &[0, -1, 0]]);
    let fixture = LinearPencil::analytic(a0, vec![a1, a2]).map_err(|e| e.to_string())?;
    let w = pencil_equiv(&r.pencil, &fixture, 0).map_err(|e| e.to_string())?.ok_or("no equivalence witness")?;
    ensure(verify_equivalence(&r.pencil, &fixture, &w), || "witness fails exact verification".into())?;
    // c₀A₀ + c₁A₁ + c₂A₂ with the cᵢ as commuting indeterminates
    let a = Alphabet::analytic(3);
    let z = FreePoly::zero(a);
    let generic = MatrixPoly::from_entries(&[
        vec![-&x(2).with_alphabet(a), z.clone(), x(1).with_alphabet(a)],
        vec![z.clone(), -&x(2).with_alphabet(a), x(0).with_alphabet(a)],
        vec![x(0).with_alphabet(a), -&x(1).with_alphabet(a), z],
    ]);
    let det = symbolic_generic_det(&generic, 1).map_err(|e| e.to_string())?;
    ensure(det.poly.is_zero(), || format!("generic combination has determinant {}", det.poly))?;
    Ok(format!("pencil of size {} equivalent to the fixture; generic determinant is 0", r.pencil.size()))
}

fn c3_atomicity() -> Check {
    let start = Instant::now();
    let budget = Budget::with_seed(0);
    let a3 = Alphabet::analytic(3);
    let yes = [
        m(&x(0)),
        m(&(&x(0) + &(&x(1) * &x(2)))),
        m(&(&(&x(0) * &x(1)) - &(&x(1) * &x(0)))),
    ];
    for f in &yes {
        let v = is_atom(f, &budget).map_err(|e| e.to_string())?;
        let freelocus::structure::AtomVerdict::Yes { certificate } = &v else {
            return Err(format!("{f}: {v:?}"));
        };
        let d = certificate.ampliated_size;
        ensure(certificate.closure_dimension == d * d, || format!("{f}: closure {} ≠ {d}²", certificate.closure_dimension))?;
    }
    let unipotent = MatrixPoly::from_entries(&[vec![c(1, a3), x(0).with_alphabet(a3)], vec![c(0, a3), c(1, a3)]]);
    let no = [m(&(&x(0) * &x(1))), m(&FreePoly::zero(Alphabet::analytic(1))), unipotent];
    for f in &no {
        let v = is_atom(f, &budget).map_err(|e| e.to_string())?;
        ensure(v.is_no(), || format!("{f}: {v:?}"))?;
    }
    let s = within(start, Duration::from_secs(120))?;
    Ok(format!("3 atoms certified, 3 non-atoms rejected, {s:.1} s"))
}

fn random_monic(rng: &mut SeededRng, d: usize, g: usize) -> LinearPencil {
    let coeffs = (0..g).map(|_| random_matrix(rng, d, d, 3, false)).collect();
    LinearPencil::analytic(DenseMatrix::identity(d), coeffs).expect("square coefficients")
}

fn c4_gleich_round_trip() -> Check {
    let mut rng = seeded(4);
    let mut done = 0;
    let mut sizes = [0usize; 5];
    while done < 50 {
        let d = 1 + done % 4;
        let g = if d == 1 { 1 + done % 3 } else { 2 + done % 2 };
        let l = random_monic(&mut rng, d, g);
        if !matches!(is_indecomposable(&l).map_err(|e| e.to_string())?, IndecomposableVerdict::Yes { .. }) {
            continue;
        }
        ensure(stabilizer_dim(&l) == 1, || format!("stabilizer of {l:?} is not 1-dimensional"))?;
        let p = random_invertible(&mut rng, d, 5, false);
        let q = random_invertible(&mut rng, d, 5, false);
        let target = l.transform(&p, &q);
        let w = pencil_equiv(&l, &target, done as u64).map_err(|e| e.to_string())?.ok_or("no witness")?;
        ensure(verify_equivalence(&l, &target, &w), || "witness fails exact verification".into())?;
        sizes[d] += 1;
        done += 1;
    }
    Ok(format!("50 pencils (d=1..4: {:?}), all witnesses exact, stabilizers 1-dimensional", &sizes[1..]))
}

fn random_atom(rng: &mut SeededRng, budget: &Budget) -> Result<FreePoly, String> {
    loop {
        let p = random_poly(rng, Alphabet::analytic(2), 2, 3, false);
        if !p.is_constant() && is_atom(&m(&p), budget).map_err(|e| e.to_string())?.is_yes() {
            return Ok(p);
        }
    }
}

fn c5_containment() -> Check {
    let mut rng = seeded(5);
    let budget = Budget { n_max: 2, trials: 10, ..Budget::with_seed(5) };
    let certified = ContainOptions { budget, mode: ContainMode::Certified };
    let lines = ContainOptions { budget: Budget { n_max: 1, trials: 100, ..budget }, mode: ContainMode::MonteCarlo };
    for k in 0..30 {
        let (a, b) = (random_atom(&mut rng, &budget)?, random_atom(&mut rng, &budget)?);
        let (f, h) = (m(&a), m(&(&a * &b)));
        match locus_contains(&f, &h, &certified).map_err(|e| e.to_string())? {
            ContainmentVerdict::Proved { certificate, .. } => {
                ensure(certificate.verify(), || format!("pair {k}: certificate fails"))?
            }
            v => return Err(format!("pair {k} ({a}, {b}): {:?}", v.status())),
        }
        match locus_contains(&f, &h, &lines).map_err(|e| e.to_string())? {
            ContainmentVerdict::ConsistentUpTo { sizes, lines_per_size, .. } => {
                ensure(sizes.len() * lines_per_size >= 100, || format!("only {lines_per_size} lines"))?
            }
            v => return Err(format!("pair {k}: Monte-Carlo verdict {:?}", v.status())),
        }
    }
    let (x1, x2) = (m(&x(0)), m(&x(1)));
    let v = locus_contains(&x1, &x2, &certified).map_err(|e| e.to_string())?;
    let ContainmentVerdict::Refuted { witness, .. } = &v else {
        return Err(format!("x1 vs x2: {:?}", v.status()));
    };
    ensure(verify_refutation(&x1, &x2, witness).map_err(|e| e.to_string())?, || "x1 vs x2 witness fails".into())?;
    let RefutationWitness::Point { point } = witness else {
        return Err("x1 vs x2 witness is not a point".into());
    };
    let expect = vec![DenseMatrix::from_ints(&[&[0]]), DenseMatrix::from_ints(&[&[1]])];
    ensure(point.n == 1 && point.x == expect, || format!("x1 vs x2 witness {point:?}"))?;
    let fs = [m(&x(0)), m(&x(1))];
    let v = contain_intersection(&fs, &m(&x(2)), &certified).map_err(|e| e.to_string())?;
    ensure(v.status == ContainmentStatus::Refuted, || format!("intersection: {:?}", v.status))?;
    let joint = v.joint_witness.ok_or("no direct-sum witness")?;
    ensure(verify_joint_witness(&fs, &m(&x(2)), &joint).map_err(|e| e.to_string())?, || "joint witness fails".into())?;
    Ok(format!(
        "30 certified proofs, 30×100 consistent lines, witness (0,1), joint witness of size {}",
        joint.n
    ))
}

fn c6_real_suite() -> Check {
    let a = Alphabet::involutive(1);
    let comm = m(&(&(&x(0) * &xs(0)) - &(&xs(0) * &x(0))));
    let v = unsignatured_search(&comm, &Budget { n_max: 3, trials: 333, ..Budget::with_seed(6) }).map_err(|e| e.to_string())?;
    let (UnsignaturedVerdict::Witness { witness, samples } | UnsignaturedVerdict::KnownByMonicPencil { witness: Some(witness), samples }) = &v else {
        return Err(format!("self-commutator: {v:?}"));
    };
    ensure(*samples <= 1000 && witness.n <= 3, || format!("witness at n={} after {samples} samples", witness.n))?;
    ensure(witness.verify(&comm).map_err(|e| e.to_string())?, || "unsignatured witness fails".into())?;
    let found = (witness.n, *samples);

    let exa = MatrixPoly::from_entries(&[
        vec![&c(1, a) + &(&x(0) * &xs(0)), x(0).with_alphabet(a)],
        vec![xs(0).with_alphabet(a), &c(-1, a) - &(&xs(0) * &x(0))],
    ]);
    let v = unsignatured_search(&exa, &Budget { n_max: 3, trials: 200, ..Budget::with_seed(6) }).map_err(|e| e.to_string())?;
    let UnsignaturedVerdict::Unknown { sizes, samples } = &v else {
        return Err(format!("hermitian 2×2 fixture: {v:?}"));
    };
    ensure(*samples >= 500, || format!("only {samples} samples"))?;
    for s in sizes {
        let expect = vec![Signature { pos: s.n, neg: s.n, zero: 0 }];
        ensure(s.singular == 0 && s.signatures == expect, || format!("size {}: {:?}, {} singular", s.n, s.signatures, s.singular))?;
    }
    let exa_samples = *samples;

    let opts = ContainOptions { budget: Budget { n_max: 2, trials: 10, ..Budget::with_seed(6) }, mode: ContainMode::Certified };
    let v = real_containment_analytic(&m(&x(0)), &m(&xs(0)), &opts).map_err(|e| e.to_string())?;
    let RealContainmentVerdict::Proved { via: Side::FStar, certificate, .. } = &v else {
        return Err(format!("x1 vs x1*: {:?}", v.status()));
    };
    ensure(certificate.verify(), || "x1 vs x1* certificate fails".into())?;

    let sos = m(&(&(&x(0) * &xs(0)) + &(&x(1) * &xs(1))));
    let h = m(&x(0));
    let v = unsignatured_search(&sos, &opts.budget).map_err(|e| e.to_string())?;
    ensure(v.witness().is_none(), || "sum of squares reported unsignatured".into())?;
    let v = real_containment_montecarlo(&sos, &h, &opts.budget).map_err(|e| e.to_string())?;
    ensure(v.status() == ContainmentStatus::ConsistentUpTo, || format!("sum of squares real containment: {:?}", v.status()))?;
    let v = stable_assoc(&sos, &h, &opts.budget).map_err(|e| e.to_string())?;
    ensure(matches!(v, StableAssocVerdict::NotEquivalent { .. }), || format!("sum of squares vs x1: {v:?}"))?;
    Ok(format!(
        "commutator witness at n={} after {} samples; fixture signature (n,n,0) over {exa_samples} samples; \
         proof via f*; sum of squares consistent and not associated",
        found.0, found.1
    ))
}

fn hermitian_pencil(rng: &mut SeededRng, d: usize, g: usize) -> LinearPencil {
    let mut coeffs = vec![DenseMatrix::identity(d)];
    for _ in 0..g {
        let a = loop {
            let a = random_matrix(rng, d, d, 3, true);
            if !a.is_zero() {
                break a;
            }
        };
        coeffs.push(a.clone());
        coeffs.push(a.adjoint());
    }
    LinearPencil::new(Alphabet::involutive(g as u32), coeffs).expect("square coefficients")
}

fn c7_hermitian_gleich() -> Check {
    let mut rng = seeded(7);
    let (mut done, mut skipped) = (0, 0);
    while done < 20 {
        let d = 1 + done % 3;
        let l = hermitian_pencil(&mut rng, d, 2);
        let budget = Budget { n_max: 3, trials: 30, ..Budget::with_seed(done as u64) };
        let search = unsignatured_search(&l.to_matrix_poly(), &budget).map_err(|e| e.to_string())?;
        let witness = search.witness().ok_or("no unsignatured witness for a monic hermitian pencil")?;
        let p = random_invertible(&mut rng, d, 5, true);
        let sign: i8 = if done % 2 == 0 { 1 } else { -1 };
        let target = l.map(|a| (&(&p * a) * &p.adjoint()).scale(&Scalar::from_int(sign.into())));
        let w = match gleichstellensatz_hermitian(&l, &target, witness, done as u64) {
            Ok(w) => w.ok_or("no hermitian equivalence")?,
            Err(Error::NotIndecomposable) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e.to_string()),
        };
        ensure(verify_hermitian_equivalence(&l, &target, &w), || "equivalence fails exact verification".into())?;
        ensure(w.sign == sign, || format!("sign {} recovered as {}", sign, w.sign))?;
        done += 1;
    }
    Ok(format!("20 pencils, signs and congruences exact ({skipped} decomposable draws skipped)"))
}

fn ideal_element(rng: &mut SeededRng, f: &FreePoly, g: u32) -> FreePoly {
    let gen = generator(f);
    let mut h = FreePoly::zero(Alphabet::slack(g));
    for _ in 0..rng.gen_range(1..4) {
        let a = random_poly(rng, Alphabet::slack(g), 2, 3, true);
        let b = random_poly(rng, Alphabet::slack(g), 2, 3, true);
        h = &h + &(&(&a * &gen) * &b);
    }
    h
}

fn c8_slack_ideal() -> Check {
    let mut rng = seeded(8);
    for k in 0..500 {
        let g = 1 + k % 2;
        let f = random_analytic(&mut rng, g, 2, 3);
        let h = ideal_element(&mut rng, &f, g);
        ensure(is_member(&h, &f).map_err(|e| e.to_string())? == Membership::Yes, || format!("member {k} rejected"))?;
        let r = sample_hard_zero_consistency(&f, &h, 2, 2, k as u64).map_err(|e| e.to_string())?;
        ensure(r.all_zero(), || format!("member {k} does not vanish: {r:?}"))?;
    }
    for k in 0..100 {
        let g = 1 + k % 2;
        let f = random_poly(&mut rng, Alphabet::involutive(g), 2, 3, true);
        if f.is_constant() {
            continue;
        }
        let nf = reduce(&random_poly(&mut rng, Alphabet::slack(g), 4, 5, true), &f).map_err(|e| e.to_string())?;
        let h = &nf + &FreePoly::constant(&Scalar::one() - &nf.constant_term(), nf.alphabet());
        ensure(is_normal(&h), || format!("{h} is not normal"))?;
        ensure(!is_member(&h, &f).map_err(|e| e.to_string())?.is_yes(), || format!("{h} accepted"))?;
    }
    let ysy = &FreePoly::y_star() * &FreePoly::y();
    for k in 0..100u64 {
        let g = 1 + (k % 2) as u32;
        let f = random_poly(&mut rng, Alphabet::involutive(g), 2, 3, true);
        if f.is_constant() {
            continue;
        }
        let h = &random_poly(&mut rng, Alphabet::slack(g), 5, 6, true)
            + &(&(&ysy * &ysy) * &random_poly(&mut rng, Alphabet::slack(g), 2, 2, false));
        let nf = reduce(&h, &f).map_err(|e| e.to_string())?;
        for s in 0..10 {
            let other = reduce_randomized(&h, &f, k * 10 + s).map_err(|e| e.to_string())?;
            ensure(other == nf, || format!("input {k}, order {s}: normal forms differ"))?;
        }
    }
    Ok("500 members vanish at hard zeros; normal forms with constants rejected; 100×10 orders confluent".into())
}

fn hereditary_quadratic(rng: &mut SeededRng, g: u32) -> FreePoly {
    let mut f = FreePoly::constant(Scalar::from_int(rng.gen_range(1..6)), Alphabet::involutive(g));
    let h = freelocus::linalg::random::random_hermitian(rng, g as usize, 3);
    for j in 0..g {
        let s = random_scalar(rng, 3, true);
        f = &f + &(&x(j).scale(&s) + &xs(j).scale(&s.conj()));
        for k in 0..g {
            f = &f + &(&xs(j) * &x(k)).scale(&h[(j as usize, k as usize)]);
        }
    }
    f
}

fn c9_psatz() -> Check {
    let mut rng = seeded(9);
    let mut worst = f64::INFINITY;
    for k in 0..20u64 {
        let g = 1 + (k % 2) as u32;
        let f = hereditary_quadratic(&mut rng, g);
        let gen = generator(&f);
        let a = random_poly(&mut rng, Alphabet::slack(g), 1, 2, true);
        let b = random_poly(&mut rng, Alphabet::slack(g), 1, 2, true);
        let f0 = &(&(&a * &gen) * &b) + &gen;
        let fj: Vec<FreePoly> = (0..1 + k % 3).map(|_| random_poly(&mut rng, Alphabet::slack(g), 2, 3, true)).collect();
        let cert = PsatzCertificate { fj };
        let h = cert.fj.iter().fold(f0, |acc, p| &acc + &(&p.adjoint() * p));
        let budget = Budget { n_max: 2, trials: 20, bound: 4, ..Budget::with_seed(k) };
        let v = verify_psatz(&h, &f, &cert, &budget).map_err(|e| e.to_string())?;
        ensure(v.is_accept(), || format!("certificate {k} rejected"))?;
        let spot = psatz_spot_check(&h, &f, 50, &budget).map_err(|e| e.to_string())?;
        ensure(spot.points == 50, || format!("certificate {k}: only {} points", spot.points))?;
        ensure(spot.min_eigenvalue >= -1e-8, || format!("certificate {k}: min eigenvalue {}", spot.min_eigenvalue))?;
        worst = worst.min(spot.min_eigenvalue);
    }
    let f = &c(1, Alphabet::involutive(1)) - &(&xs(0) * &x(0));
    let minus_one = c(-1, Alphabet::involutive(1));
    let v = verify_psatz(&minus_one, &f, &PsatzCertificate { fj: vec![] }, &Budget::default()).map_err(|e| e.to_string())?;
    ensure(!v.is_accept(), || "h = -1 accepted".into())?;
    Ok(format!("20 certificates accepted, min eigenvalue {worst:.3e} over 1000 points; h = -1 rejected"))
}

fn c10_gradient() -> Check {
    let mut rng = seeded(10);
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let g = 1 + (k % 2) as u32;
        let n = 1 + k % 2;
        let f = m(&random_analytic(&mut rng, g, 3, 4));
        let pt: Vec<DenseMatrix> = (0..g).map(|_| random_matrix(&mut rng, n, n, 3, true)).collect();
        let r = gradient_conjugation_check(&f, &pt).map_err(|e| e.to_string())?;
        ensure(r.exact_agree, || format!("{f}: conjugated partials differ"))?;
        ensure(r.max_difference_error < 1e-6, || format!("{f}: finite differences off by {}", r.max_difference_error))?;
        worst = worst.max(r.max_difference_error);
    }
    Ok(format!("20 polynomials exact; finite differences within {worst:.2e}"))
}

fn random_expr(rng: &mut SeededRng, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..4) {
            0 => Expr::Num(BigRational::new(rng.gen_range(0..20).into(), rng.gen_range(1..6).into())),
            1 => Expr::I,
            2 => Expr::X(rng.gen_range(0..3)),
            _ => Expr::Y,
        };
    }
    let sub = |rng: &mut SeededRng| Box::new(random_expr(rng, depth - 1));
    match rng.gen_range(0..6) {
        0 => Expr::Neg(sub(rng)),
        1 => Expr::Add(sub(rng), sub(rng)),
        2 => Expr::Sub(sub(rng), sub(rng)),
        3 => Expr::Mul(sub(rng), sub(rng)),
        4 => Expr::Pow(sub(rng), rng.gen_range(0..4)),
        _ => Expr::Adj(sub(rng)),
    }
}

/// `(command, arguments, documented exit code)`.
const CORPUS: &[(&[&str], &[&str], i32)] = &[
    (&[], &["full", "x1"], 0),
    (&[], &["full", "[x1, x2; x1, x2]"], 1),
    (&[], &["full", "0"], 1),
    (&[], &["unit", "2"], 0),
    (&[], &["unit", "x1"], 1),
    (&[], &["unit", "[1, x1; 0, 1]"], 2),
    (&[], &["atom", "x1x2\u{2212}x2x1"], 0),
    (&[], &["atom", "x1 x2"], 1),
    (&[], &["blocks", "x1 x2"], 0),
    (&[], &["linearize", "x1 x2 - x2 x1"], 0),
    (&[], &["equiv", "l=[1 + x1, 0; 0, 1 + x2]", "m=[1 + x2, 0; 0, 1 + x1]"], 0),
    (&[], &["equiv", "l=1 + x1", "m=1 + x2"], 1),
    (&[], &["stable-assoc", "f=x1", "g=2 x1"], 0),
    (&[], &["stable-assoc", "f=x1", "g=x1 x2"], 1),
    (&[], &["contain", "f=x1", "h=x2"], 1),
    (&["--certified"], &["contain", "f=x1", "h=x1 x2"], 0),
    (&[], &["contain", "f=x1", "h=x1 x2"], 2),
    (&[], &["contain", "f=x1", "f=x2", "h=x3"], 1),
    (&["--certified"], &["contain-real-analytic", "f=x1", "h=x1'"], 0),
    (&[], &["contain-real-analytic", "f=x1", "h=x2"], 1),
    (&["--certified"], &["contain-real-hermitian", "f=1 + x1 + x1'", "h=1 + x1 + x1'"], 0),
    (&[], &["contain-real-hermitian", "f=x1 x1' + x2 x2'", "h=x1"], 2),
    (&[], &["gleich", "l=1 + x1", "m=2 + 2 x1"], 0),
    (&[], &["gleich", "l=1 + x1", "m=1 + x2"], 1),
    (&[], &["gleich-hermitian", "l=1 + x1 + x1'", "m=-1 - x1 - x1'"], 0),
    (&[], &["gleich-hermitian", "l=1 + x1 + x1'", "m=1 + 2 x1 + 2 x1'"], 1),
    (&[], &["signature", "[1, 0; 0, -1]"], 0),
    (&[], &["unsignatured", "x1 x1' - x1' x1"], 0),
    (&[], &["unsignatured", "[1 + x1 x1', x1; x1', -1 - x1' x1]"], 2),
    (&[], &["slack-reduce", "h=y' y", "f=1 - x1' x1"], 0),
    (&[], &["slack-member", "h=y' y - (1 - x1' x1)", "f=1 - x1' x1"], 0),
    (&[], &["slack-member", "h=1", "f=1 - x1' x1"], 1),
    (&[], &["psatz-verify", "h=1 - y' y", "f=1 - x1' x1", "fj=x1"], 0),
    (&[], &["psatz-verify", "h=-1", "f=1 - x1' x1"], 1),
    (&[], &["eval", "f=x1 x2", "x1=[1, 2; 3, 4]", "x2=[0, 1; 1, 0]"], 0),
    (&[], &["probe-real", "f=1 + x1 + x1'", "h=x2"], 1),
    (&[], &["probe-real", "f=1 + x1 + x1'", "h=1 + x1 + x1'"], 2),
    (&[], &["full", "x1 +"], 3),
    (&[], &["full", "x0"], 3),
    (&[], &["atom"], 3),
    (&[], &["eval", "f=x1"], 3),
    (&[], &["signature", "x1"], 3),
    (&[], &["signature", "[1, 2; 3, 4]"], 3),
    (&["--prime", "12"], &["full", "x1"], 3),
    (&[], &["frobnicate", "x1"], 3),
];

fn binary(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_freelocus")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code().ok_or("terminated by signal")?, out.stdout))
}

fn c11_cli() -> Check {
    let mut rng = seeded(11);
    for k in 0..500 {
        let e = random_expr(&mut rng, 5);
        let text = e.to_string();
        let back = parse(&text).map_err(|err| format!("{text}: {err}"))?;
        ensure(back == e, || format!("expression {k} printed as {text} reparses differently"))?;
    }
    for (flags, args, expect) in CORPUS {
        let argv: Vec<&str> = ["--seed", "3"].iter().chain(flags.iter()).chain(args.iter()).copied().collect();
        let (code, first) = binary(&argv)?;
        ensure(code == *expect, || format!("{args:?}: exit {code}, documented {expect}"))?;
        let (again, second) = binary(&argv)?;
        ensure(again == code && first == second, || format!("{args:?}: reruns differ"))?;
    }
    Ok(format!("500 expressions round-trip; {} fixtures match their exit codes, reruns byte-identical", CORPUS.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("linearization identity", c1_linearization_identity),
        ("commutator fixture", c2_commutator_fixture),
        ("atomicity", c3_atomicity),
        ("equivalence round trip", c4_gleich_round_trip),
        ("containment", c5_containment),
        ("real suite", c6_real_suite),
        ("hermitian equivalence", c7_hermitian_gleich),
        ("slack ideal", c8_slack_ideal),
        ("certificate verification", c9_psatz),
        ("gradient conjugation", c10_gradient),
        ("command line", c11_cli),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{secs:.1} s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} [{secs:.1} s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
