//! Randomized and exhaustive identity checks over the kernel.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;
use z3forms::action::{
    euler_lagrange, field_equation_shape, field_equation_terms, lagrangian_density, laplacian_power, lorenz_reduce,
    scalar_product_words, sum_of_squares, weighted_squares,
};
use z3forms::grassmann::{enumerate_basis, normalize_word, Kind, Letter};
use z3forms::{
    conjugate_form, sample, scalar_product, CoeffExpr, Connection, Form, Grade, GradedMatrix, Jet, MatterField, Mode,
    PairingConfig, Scalar, Symbol, TripleTable,
};

const NC: Mode = Mode::Noncommutative;
const CLIP: usize = 240;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Scalar,
    Grassmann,
    Matrix,
    Forms,
    Gauge,
    Action,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["all", "scalar", "grassmann", "matrix", "forms", "gauge", "action"];

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => {
                vec![Suite::Scalar, Suite::Grassmann, Suite::Matrix, Suite::Forms, Suite::Gauge, Suite::Action]
            }
            s => vec![s],
        }
    }

    fn stream(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(Suite::NAMES[*self as usize])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown suite `{0}`; expected one of all, scalar, grassmann, matrix, forms, gauge, action")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, UnknownSuite> {
        Ok(match s {
            "all" => Suite::All,
            "scalar" => Suite::Scalar,
            "grassmann" => Suite::Grassmann,
            "matrix" => Suite::Matrix,
            "forms" => Suite::Forms,
            "gauge" => Suite::Gauge,
            "action" => Suite::Action,
            _ => return Err(UnknownSuite(s.to_string())),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub suite: String,
    pub check: String,
    pub input: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} seed {} cases {}", self.suite, self.seed, self.cases)?;
        writeln!(f, "checks {} failures {}", self.checks, self.failures.len())?;
        for x in &self.failures {
            writeln!(f, "FAIL [{}] {}", x.suite, x.check)?;
            writeln!(f, "  input:    {}", x.input)?;
            writeln!(f, "  expected: {}", x.expected)?;
            writeln!(f, "  got:      {}", x.got)?;
        }
        Ok(())
    }
}

fn clip(s: String) -> String {
    match s.char_indices().nth(CLIP) {
        Some((i, _)) => format!("{} ...", &s[..i]),
        None => s,
    }
}

struct Run {
    suite: Suite,
    checks: usize,
    failures: Vec<Failure>,
}

impl Run {
    fn eq<T: PartialEq + fmt::Display>(&mut self, check: &str, input: impl FnOnce() -> String, expected: &T, got: &T) {
        self.checks += 1;
        if expected != got {
            self.fail(check, input(), expected.to_string(), got.to_string());
        }
    }

    fn holds(
        &mut self,
        check: &str,
        input: impl FnOnce() -> String,
        expected: &str,
        ok: bool,
        got: impl FnOnce() -> String,
    ) {
        self.checks += 1;
        if !ok {
            self.fail(check, input(), expected.to_string(), got());
        }
    }

    fn fail(&mut self, check: &str, input: String, expected: String, got: String) {
        self.failures.push(Failure {
            suite: self.suite.to_string(),
            check: check.to_string(),
            input: clip(input),
            expected: clip(expected),
            got: clip(got),
        });
    }
}

pub fn run_verify(suite: &str, seed: u64, cases: usize) -> Result<VerifyReport, UnknownSuite> {
    let suite: Suite = suite.parse()?;
    let start = Instant::now();
    let (mut checks, mut failures) = (0, Vec::new());
    for part in suite.parts() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(part.stream());
        let mut run = Run { suite: part, checks: 0, failures: Vec::new() };
        match part {
            Suite::Scalar => scalar_suite(&mut run, &mut rng, cases),
            Suite::Grassmann => grassmann_suite(&mut run, &mut rng, cases),
            Suite::Matrix => matrix_suite(&mut run, &mut rng, cases),
            Suite::Forms => forms_suite(&mut run, &mut rng, cases),
            Suite::Gauge => gauge_suite(&mut run, &mut rng, cases),
            Suite::Action => action_suite(&mut run, &mut rng, cases),
            Suite::All => unreachable!(),
        }
        checks += run.checks;
        failures.extend(run.failures);
    }
    Ok(VerifyReport { suite: suite.to_string(), seed, cases, checks, failures, elapsed: start.elapsed() })
}

fn scalar_suite(run: &mut Run, rng: &mut ChaCha8Rng, cases: usize) {
    let j = Scalar::j();
    run.eq("j^3 = 1", || "j".into(), &Scalar::one(), &(&(&j * &j) * &j));
    run.eq("1 + j + j^2 = 0", || "j".into(), &Scalar::zero(), &(&(&Scalar::one() + &j) + &Scalar::j_pow(2)));
    for _ in 0..cases {
        let [a, b, c] = std::array::from_fn(|_| sample::scalar(rng));
        let input = || format!("a = {a}, b = {b}, c = {c}");
        run.eq("associativity", input, &(&(&a * &b) * &c), &(&a * &(&b * &c)));
        run.eq("commutativity", input, &(&a * &b), &(&b * &a));
        run.eq("distributivity", input, &(&(&a * &b) + &(&a * &c)), &(&a * &(&b + &c)));
        run.eq("conj is multiplicative", input, &(&a.conj() * &b.conj()), &(&a * &b).conj());
        run.eq("norm = a conj(a)", input, &Scalar::from_rational(a.norm()), &(&a * &a.conj()));
        let nz = sample::nonzero_scalar(rng);
        let inv = nz.inv().expect("nonzero");
        run.eq("inverse", || format!("a = {nz}"), &Scalar::one(), &(&nz * &inv));
        let (ar, ai) = a.embed_complex();
        let (br, bi) = b.embed_complex();
        let (pr, pi) = (&a * &b).embed_complex();
        let dev = (pr - (ar * br - ai * bi)).abs() + (pi - (ar * bi + ai * br)).abs();
        run.holds("complex embedding is multiplicative", input, "deviation < 1e-9", dev < 1e-9, || format!("{dev:e}"));
    }
}

fn grassmann_suite(run: &mut Run, rng: &mut ChaCha8Rng, cases: usize) {
    for n in 1..=5usize {
        let count = enumerate_basis(n)
            .iter()
            .filter(|(w, _)| !w.is_empty() && w.0.iter().all(|l| l.kind == Kind::Theta))
            .count();
        run.eq("theta basis count", || format!("N = {n}"), &(n + n * n + (n * n * n - n) / 3), &count);
    }
    let n = 3;
    for a in 1..=n {
        for kind in [Kind::Theta, Kind::Bar] {
            let l = Letter { kind, index: a };
            let w = normalize_word(n, &[l, l, l]).expect("in range");
            run.holds("cube vanishes", || format!("{l}{l}{l}"), "0", w.is_zero(), || w.to_string());
        }
        for b in 1..=n {
            for c in 1..=n {
                let ls = [Letter::theta(a), Letter::theta(b), Letter::bar(c)];
                let w = normalize_word(n, &ls).expect("in range");
                run.holds("mixed triple vanishes", || words(&ls), "0", w.is_zero(), || w.to_string());
                for d in 1..=n {
                    let ls = [Letter::theta(a), Letter::theta(b), Letter::theta(c), Letter::theta(d)];
                    let w = normalize_word(n, &ls).expect("in range");
                    run.holds("length-4 word vanishes", || words(&ls), "0", w.is_zero(), || w.to_string());
                }
            }
        }
    }
    for _ in 0..cases {
        let n = rng.gen_range(1..=3);
        let [x, y, z] = std::array::from_fn(|_| sample::grass(rng, n));
        let input = || format!("x = {x}, y = {y}, z = {z}");
        let xy = x.multiply(&y).expect("same n");
        let yz = y.multiply(&z).expect("same n");
        run.eq("associativity", input, &xy.multiply(&z).expect("same n"), &x.multiply(&yz).expect("same n"));
        let lhs = x.multiply(&y.add(&z).expect("same n")).expect("same n");
        let rhs = xy.add(&x.multiply(&z).expect("same n")).expect("same n");
        run.eq("distributivity", input, &rhs, &lhs);

        let kind = if rng.gen_bool(0.5) { Kind::Theta } else { Kind::Bar };
        let ls: [Letter; 3] = std::array::from_fn(|_| Letter { kind, index: rng.gen_range(1..=n) });
        let rot = [ls[1], ls[2], ls[0]];
        let phase = Scalar::j_pow(if kind == Kind::Theta { 1 } else { 2 });
        let w = normalize_word(n, &ls).expect("in range");
        let r = normalize_word(n, &rot).expect("in range").scale(&phase);
        run.eq("cyclic relation", || words(&ls), &r, &w);
    }
}

fn words(ls: &[Letter]) -> String {
    ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

fn matrix_suite(run: &mut Run, rng: &mut ChaCha8Rng, cases: usize) {
    let eta = GradedMatrix::eta();
    let inner = eta.graded_commutator(&eta).expect("homogeneous");
    let outer = eta.graded_commutator(&inner).expect("homogeneous");
    let jacobiator = outer.scale(&Scalar::from_int(3));
    run.eq(
        "Jacobi counterexample",
        || "eta, eta, eta".into(),
        &GradedMatrix::identity().scale(&Scalar::from_int(9)),
        &jacobiator,
    );
    run.eq(
        "d^3 eta = 0",
        || "eta".into(),
        &GradedMatrix::zero(),
        &eta.eta_differential().eta_differential().eta_differential(),
    );
    for _ in 0..cases {
        let b = sample::homogeneous_matrix(rng);
        let c = sample::matrix(rng);
        let input = || format!("B = {b}, C = {c}");
        let d3 = c.eta_differential().eta_differential().eta_differential();
        run.eq("d^3 = 0", || format!("C = {c}"), &GradedMatrix::zero(), &d3);
        let Grade::Homogeneous(g) = b.grade_of() else { unreachable!("homogeneous sample") };
        let lhs = (&b * &c).eta_differential();
        let rhs = &b.eta_differential() * &c + (&b * &c.eta_differential()).scale(&Scalar::j_pow(g.value() as i64));
        run.eq("graded Leibniz", input, &rhs, &lhs);
    }
}

fn forms_suite(run: &mut Run, rng: &mut ChaCha8Rng, cases: usize) {
    for _ in 0..cases {
        let n = rng.gen_range(2..=3);
        let mode = if rng.gen_bool(0.8) { NC } else { Mode::Commutative };
        let w = sample::form(rng, mode, n, 2, false);
        let zero = Form::zero(n, mode);
        let dw = w.differential();
        run.eq("image of d lies in kernel of d^2", || w.to_string(), &zero, &dw.differential_n(2));
        run.eq("image of d^2 lies in kernel of d", || w.to_string(), &zero, &dw.differential().differential());

        let d = rng.gen_range(1..=2);
        let a = Form::from_items(n, NC, sample::word(rng, NC, n, d, true)).expect("valid word");
        let p = sample::form(rng, NC, n, 2, false);
        let Grade::Homogeneous(g) = a.grade() else { unreachable!("single word") };
        let lhs = (&a * &p).differential();
        let rhs = &(&a.differential() * &p) + &(&a * &p.differential()).scale(&Scalar::j_pow(g.value() as i64));
        run.eq("graded Leibniz", || format!("w = {a}, p = {p}"), &rhs, &lhs);

        let [x, y, z] = std::array::from_fn(|_| sample::form(rng, NC, n, 2, false));
        run.eq("associativity", || format!("a = {x}, b = {y}, c = {z}"), &(&(&x * &y) * &z), &(&x * &(&y * &z)));
    }
}

fn gauge_suite(run: &mut Run, rng: &mut ChaCha8Rng, cases: usize) {
    let u = Symbol::new("U");
    for n in 2..=3 {
        let c = Connection::pure_gauge(n, &u);
        let omega = c.curvature();
        run.holds(
            "pure-gauge flatness",
            || format!("A = U^-1 dU, n = {n}"),
            "0",
            omega.is_zero(),
            || omega.to_string(),
        );

        let g = Connection::generic(n);
        let t = g.curvature_components();
        run.eq(
            "cubic components",
            || format!("generic A, n = {n}"),
            &g.cubic_table().to_form(),
            &TripleTable::from_components(&t).to_form(),
        );
        for i in 1..=n {
            for k in 1..=n {
                run.eq(
                    "field strength",
                    || format!("generic A, n = {n}, F[{i},{k}]"),
                    &g.field_strength(i, k),
                    t.t21(i, k),
                );
            }
        }
        let phi = MatterField::new("Phi").form(n);
        let lhs = g.covariant_differential_n(&phi, 3).expect("same n");
        run.eq("D^3 Phi = Omega Phi", || format!("generic A, n = {n}"), &(g.curvature() * &phi), &lhs);

        let a = Connection::abelian(n);
        run.eq(
            "covariant cubic identity (abelian)",
            || format!("abelian A, n = {n}"),
            &a.covariant_cubic_table().cyclic_symmetrize().to_form(),
            &a.cubic_table().cyclic_symmetrize().to_form(),
        );
    }

    let g = Connection::generic(2);
    run.eq(
        "covariant cubic identity",
        || "generic A, n = 2".into(),
        &g.covariant_cubic_table().cyclic_symmetrize().to_form(),
        &g.cubic_table().cyclic_symmetrize().to_form(),
    );
    let df = g.covariant_derivative_f();
    let r = g.covariant_cubic_table();
    for (i, k, m) in [(1, 1, 2), (1, 2, 2), (2, 1, 1), (2, 2, 1)] {
        let dev = z3forms::split_deviation(r.get(i, k, m), df.get(i, m, k), df.get(k, m, i));
        run.holds(
            "real/imaginary split",
            || format!("generic A, n = 2, ({i},{k},{m})"),
            "deviation < 1e-12",
            dev < 1e-12,
            || format!("{dev:e}"),
        );
    }

    let uu = CoeffExpr::symbol(NC, u.clone());
    let uinv = CoeffExpr::symbol(NC, u.inverse());
    let moved = g.gauge_transform(&u).curvature();
    let want = g.curvature_components().map(|x| &(&uinv * x) * &uu).to_form();
    run.eq("gauge covariance", || "generic A, n = 2".into(), &want, &moved);

    for _ in 0..cases {
        let n = 2;
        let conn = Connection::new((0..n).map(|_| sample::coeff(rng, NC, n)).collect()).expect("n components");
        let phi = MatterField::new("Phi").form(n);
        let input =
            || format!("A = [{}]", conn.components().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
        let lhs = conn.covariant_differential_n(&phi, 3).expect("same n");
        run.eq("D^3 Phi = Omega Phi", input, &(conn.curvature() * &phi), &lhs);
    }
}

fn real_top_form(rng: &mut ChaCha8Rng, n: usize) -> Form {
    let mode = Mode::Commutative;
    let t = sample::top_form(rng, mode, n).components().expect("degree 3");
    t.map(|c| {
        c.substitute(|jet| {
            jet.sym().map(|s| CoeffExpr::jet(mode, Jet::with_derivs(s.clone().real(), jet.derivs().to_vec())))
        })
        .expect("commutative substitution")
    })
    .to_form()
}

fn action_suite(run: &mut Run, rng: &mut ChaCha8Rng, cases: usize) {
    let cfg = PairingConfig::symbolic();
    let mode = Mode::Commutative;
    for n in 2..=3 {
        let conn = Connection::abelian(n);
        let report = lagrangian_density(&conn).expect("abelian");
        let input = || format!("abelian A, n = {n}");
        run.holds("mixed invariant is half the derivative invariant", input, "C = B/2", report.mixed_is_half, || {
            "C != B/2".into()
        });
        let ratio = report.with_ratio(&Scalar::from_int(-2)).map(|(a, b)| format!("{a}, {b}"));
        run.holds("derivative sector admits ratio -2", input, "alpha/beta = -2", ratio.is_some(), || "no fit".into());
        let mass = report.mass.clone().unwrap_or_else(Scalar::zero);
        run.holds("mu sector proportional to F^2", input, "nonzero multiple of sum F_ik^2", !mass.is_zero(), || {
            "no fit".into()
        });

        let e = euler_lagrange(&conn, &report.density).expect("variation");
        let shape = field_equation_shape(&conn, &e);
        let got = match &shape {
            Some(s) => format!("alpha = {}, gamma = {}, gamma/alpha = {}", s.alpha, s.gamma, &s.gamma / &s.alpha),
            None => "no three-term fit".into(),
        };
        let reference = Scalar::from_ratio(3, 4);
        let ok = shape.as_ref().is_some_and(|s| &s.gamma / &s.alpha == reference);
        run.holds("field equation matches reference shape up to one constant", input, "gamma/alpha = 3/4", ok, || got);

        let mu = CoeffExpr::symbol(mode, PairingConfig::mu_symbol());
        for k in 1..=n {
            let [t1, t2, t3] = field_equation_terms(&conn, k);
            let eq = &(&t1 - &t2) + &(&mu * &t3).scale(&reference);
            let want = &laplacian_power(&conn, k, 2) + &(&mu * &laplacian_power(&conn, k, 1)).scale(&reference);
            run.eq(
                "Lorenz-gauge reduction",
                || format!("abelian A, n = {n}, k = {k}"),
                &lorenz_reduce(&conn, &want).expect("substitution"),
                &lorenz_reduce(&conn, &eq).expect("substitution"),
            );
        }
    }
    for _ in 0..cases {
        let n = rng.gen_range(2..=3);
        let w = sample::top_form(rng, mode, n);
        let p = sample::top_form(rng, mode, n);
        let input = || format!("w = {w}, p = {p}");
        let a = scalar_product(&w, &p, &cfg).expect("degree 3");
        let b = scalar_product_words(&conjugate_form(&w).expect("degree 3"), &p, &cfg).expect("degree 3");
        run.eq("pairing routes agree", input, &a, &b);
        run.eq("pairing is Hermitian", input, &a, &scalar_product(&p, &w, &cfg).expect("degree 3").conjugate());

        let r = real_top_form(rng, n);
        let (cubic, mixed) = sum_of_squares(&r).expect("degree 3");
        let want = &weighted_squares(&cubic, mode) + &(cfg.mu() * &weighted_squares(&mixed, mode));
        run.eq("norm is a sum of squares", || r.to_string(), &want, &scalar_product(&r, &r, &cfg).expect("degree 3"));
        let positive = cubic.iter().chain(&mixed).all(|(c, _)| c.is_rational() && !c.is_negative_rational());
        run.holds(
            "square weights are non-negative",
            || r.to_string(),
            "all weights >= 0",
            positive,
            || format!("{cubic:?}"),
        );
    }
}
