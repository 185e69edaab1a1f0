use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use z3forms::action::{scalar_product_words, sum_of_squares, weighted_squares};
use z3forms::{
    conjugate_form, sample, scalar_product, CoeffExpr, Connection, Form, Grade, GradedMatrix, MatterField, Mode,
    PairingConfig, Scalar,
};

const NC: Mode = Mode::Noncommutative;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn d_cubed_vanishes_on_random_forms() {
    let mut r = rng(1);
    for _ in 0..500 {
        let n = 3;
        let w = sample::form(&mut r, NC, n, 2, false);
        let dw = w.differential();
        assert!(dw.differential_n(2).is_zero(), "d³ ≠ 0 on {w}");
        let ddw = dw.differential();
        assert!(ddw.differential().is_zero());
    }
}

#[test]
fn d_cubed_vanishes_with_commuting_coefficients() {
    let mut r = rng(2);
    for _ in 0..100 {
        let w = sample::form(&mut r, Mode::Commutative, 2, 2, false);
        assert!(w.differential_n(3).is_zero());
    }
}

#[test]
fn graded_leibniz() {
    let mut r = rng(3);
    for _ in 0..200 {
        let n = 3;
        let d = rand::Rng::gen_range(&mut r, 1..=2);
        let w = Form::from_items(n, NC, sample::word(&mut r, NC, n, d, true)).unwrap();
        let p = sample::form(&mut r, NC, n, 2, false);
        let Grade::Homogeneous(g) = w.grade() else { unreachable!() };
        let lhs = (&w * &p).differential();
        let rhs = &(&w.differential() * &p) + &(&w * &p.differential()).scale(&Scalar::j_pow(g.value() as i64));
        assert_eq!(lhs, rhs, "ω = {w}, φ = {p}");
    }
}

#[test]
fn product_is_associative() {
    let mut r = rng(4);
    for _ in 0..200 {
        let [a, b, c] = std::array::from_fn(|_| sample::form(&mut r, NC, 3, 2, false));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }
}

#[test]
fn matrix_differential_and_leibniz() {
    let mut r = rng(5);
    for _ in 0..200 {
        let b = sample::homogeneous_matrix(&mut r);
        let c = sample::matrix(&mut r);
        let d3 = b.eta_differential().eta_differential().eta_differential();
        assert!(d3.is_zero());
        let Grade::Homogeneous(g) = b.grade_of() else { unreachable!() };
        let lhs = (&b * &c).eta_differential();
        let rhs = &b.eta_differential() * &c + (&b * &c.eta_differential()).scale(&Scalar::j_pow(g.value() as i64));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn jacobi_fails_for_graded_commutator() {
    let eta = GradedMatrix::eta();
    let inner = eta.graded_commutator(&eta).unwrap();
    let outer = eta.graded_commutator(&inner).unwrap();
    // all three cyclic terms coincide
    assert_eq!(outer.scale(&Scalar::from_int(3)), GradedMatrix::identity().scale(&Scalar::from_int(9)));
}

#[test]
fn covariant_cube_for_random_potentials() {
    let mut r = rng(6);
    for _ in 0..10 {
        let n = 2;
        let conn = Connection::new((0..n).map(|_| sample::coeff(&mut r, NC, n)).collect()).unwrap();
        let phi = MatterField::new("Phi").form(n);
        assert_eq!(conn.covariant_differential_n(&phi, 3).unwrap(), conn.curvature() * &phi);
    }
}

#[test]
fn pairing_routes_agree_and_are_hermitian() {
    let mut r = rng(7);
    let cfg = PairingConfig::symbolic();
    for _ in 0..100 {
        let w = sample::top_form(&mut r, Mode::Commutative, 3);
        let p = sample::top_form(&mut r, Mode::Commutative, 3);
        let a = scalar_product(&w, &p, &cfg).unwrap();
        assert_eq!(a, scalar_product_words(&conjugate_form(&w).unwrap(), &p, &cfg).unwrap());
        assert_eq!(a, scalar_product(&p, &w, &cfg).unwrap().conjugate());
    }
}

#[test]
fn norm_is_a_sum_of_squares() {
    let mut r = rng(8);
    for n in 2..=3 {
        for _ in 0..30 {
            let w = real_top_form(&mut r, n);
            let cfg = PairingConfig::symbolic();
            let (cubic, mixed) = sum_of_squares(&w).unwrap();
            let mode = Mode::Commutative;
            let want = &weighted_squares(&cubic, mode) + &(cfg.mu() * &weighted_squares(&mixed, mode));
            assert_eq!(scalar_product(&w, &w, &cfg).unwrap(), want);
            assert!(cubic.iter().chain(&mixed).all(|(wt, _)| wt.is_rational() && !wt.is_negative_rational()));
        }
    }
}

fn real_top_form(r: &mut ChaCha8Rng, n: usize) -> Form {
    let mode = Mode::Commutative;
    let w = sample::top_form(r, mode, n);
    let t = w.components().unwrap();
    // keep only real symbols so that conjugation fixes the coefficients
    t.map(|c| {
        c.substitute(|jet| {
            jet.sym().map(|s| CoeffExpr::jet(mode, z3forms::Jet::with_derivs(s.clone().real(), jet.derivs().to_vec())))
        })
        .unwrap()
    })
    .to_form()
}
