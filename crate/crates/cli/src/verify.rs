//! The `verify-paper` reproduction suite: every explicit number and
//! membership claim checked exactly, one line item each.

use abelcone::canring::{verify_relations, CanonicalClass};
use abelcone::cm::{semi_not_strong_witness, CmWitness};
use abelcone::fourier::check_prodform;
use abelcone::positivity::sym2::default_grid;
use abelcone::positivity::{
    decompose_sym2, hermitian_matrix, is_nef_canonical, is_semipositive, weak_positivity_oracle, Certificate,
    LpMode, Status, WeakOptions,
};
use abelcone::scalar::{factorial, format_rational, int, rat};
use abelcone::{CanonicalRing, Generator, Monomial, Rational as Q};
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::sample;

/// The archived semipositive-but-not-strong witness for `n = 4`, `k = 2`.
pub const CM_WITNESS_N4_K2: &str = include_str!("../../core/data/cm_witness_n4_k2.json");

/// Restarts and tolerance of the weak-positivity runs.
pub const WEAK_RESTARTS: usize = 64;
pub const WEAK_TOL: f64 = 1e-9;
/// Sample counts and the interior margin of the Sym² sampling item.
pub const SYM2_SAMPLES: usize = 200;
pub const SYM2_MIN_RATE: f64 = 0.95;
pub fn sym2_margin() -> Q {
    rat(1, 1000)
}
pub const POWER_FORMULA_SAMPLES: usize = 20;
pub const POWER_FORMULA_SAMPLES_N4: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Section {
    Products,
    Lambda,
    Relations,
    Hermitian,
    NefProduct,
    NefMu,
    MuT,
    Sym2,
    PowerFormulas,
    Cm,
}

impl Section {
    pub const ALL: [Section; 10] = [
        Section::Products,
        Section::Lambda,
        Section::Relations,
        Section::Hermitian,
        Section::NefProduct,
        Section::NefMu,
        Section::MuT,
        Section::Sym2,
        Section::PowerFormulas,
        Section::Cm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Section::Products => "products",
            Section::Lambda => "lambda",
            Section::Relations => "relations",
            Section::Hermitian => "hermitian",
            Section::NefProduct => "nef-product",
            Section::NefMu => "nef-mu",
            Section::MuT => "mu-t",
            Section::Sym2 => "sym2",
            Section::PowerFormulas => "power-formulas",
            Section::Cm => "cm",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Item {
    pub section: &'static str,
    pub id: String,
    /// The statement being checked.
    pub claim: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub items: Vec<Item>,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Empty means every section.
    pub only: Vec<Section>,
    /// Restrict the genus-dependent sections to one `g`.
    pub g: Option<usize>,
}

struct Items {
    section: Section,
    items: Vec<Item>,
}

impl Items {
    fn push(&mut self, id: impl Into<String>, claim: impl Into<String>, observed: impl Into<String>, pass: bool) {
        self.items.push(Item {
            section: self.section.name(),
            id: id.into(),
            claim: claim.into(),
            observed: observed.into(),
            pass,
        });
    }
}

pub fn run(opts: &VerifyOptions) -> abelcone::Result<Report> {
    let mut sections: Vec<Section> = if opts.only.is_empty() { Section::ALL.to_vec() } else { opts.only.clone() };
    sections.sort();
    sections.dedup();
    let mut items = Vec::new();
    for s in sections {
        let mut out = Items { section: s, items: Vec::new() };
        // each section draws from its own stream so `--only` does not shift samples
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ ((s as u64 + 1) << 32));
        match s {
            Section::Products => products(&mut out)?,
            Section::Lambda => lambda(&mut out, genera(opts.g, 1..=4))?,
            Section::Relations => relations(&mut out, genera(opts.g, 2..=3))?,
            Section::Hermitian => hermitian(&mut out)?,
            Section::NefProduct => nef_product(&mut out)?,
            Section::NefMu => nef_mu(&mut out)?,
            Section::MuT => mu_t(&mut out, opts.seed)?,
            Section::Sym2 => sym2(&mut out, &mut rng)?,
            Section::PowerFormulas => power_formulas(&mut out, &mut rng)?,
            Section::Cm => cm(&mut out)?,
        }
        items.extend(out.items);
    }
    let passed = items.iter().filter(|i| i.pass).count();
    let failed = items.len() - passed;
    Ok(Report { seed: opts.seed, items, passed, failed, all_pass: failed == 0 })
}

fn genera(only: Option<usize>, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
    match only {
        Some(g) => vec![g],
        None => default.collect(),
    }
}

fn q(x: &Q) -> String {
    format_rational(x)
}

fn ring(g: usize) -> abelcone::Result<CanonicalRing> {
    CanonicalRing::new(g)
}

/// Degree-4 monomials at `g = 2`, each multiplied out one generator at a time.
fn products(out: &mut Items) -> abelcone::Result<()> {
    let r = ring(2)?;
    for m in Monomial::all_of_degree(4) {
        let mut acc = r.one::<Q>();
        for (gen, e) in [(Generator::Theta1, m.t1), (Generator::Theta2, m.t2), (Generator::Lambda, m.l)] {
            for _ in 0..e {
                acc = r.mul(&acc, &r.generator(gen))?;
            }
        }
        let v = acc.top_value().unwrap_or_else(Q::zero);
        let expected = match (m.t1, m.t2, m.l) {
            (2, 2, 0) => 4,
            (1, 1, 2) => -4,
            (0, 0, 4) => 24,
            _ => 0,
        };
        out.push(m.key(), format!("{} = {expected}", m.key()), q(&v), v == int(expected));
    }
    Ok(())
}

fn lambda(out: &mut Items, gs: Vec<usize>) -> abelcone::Result<()> {
    for g in gs {
        let r = ring(g)?;
        let v = r.pow(&r.generator::<Q>(Generator::Lambda), 2 * g)?.top_value().unwrap_or_else(Q::zero);
        let sign = if g % 2 == 0 { 1 } else { -1 };
        let expected = Q::from_integer(factorial(2 * g as u32) * sign);
        out.push(
            format!("g{g}"),
            format!("lambda^{} = {}", 2 * g, q(&expected)),
            q(&v),
            v == expected,
        );
    }
    Ok(())
}

fn relations(out: &mut Items, gs: Vec<usize>) -> abelcone::Result<()> {
    for g in gs {
        for c in verify_relations(g)?.checks {
            out.push(format!("g{g}/{}", c.name), c.statement, if c.holds { "holds" } else { "fails" }, c.holds);
        }
    }
    Ok(())
}

/// The six Hermitian matrices on `∧²C⁴` in the basis
/// `z12, z13, z14, z23, z24, z34`.
pub fn expected_hermitian() -> Vec<(Monomial, [[i64; 6]; 6])> {
    vec![
        (
            Monomial::new(1, 1, 0),
            [
                [0, 0, 0, 0, 0, 0],
                [0, 1, 0, 0, 0, 0],
                [0, 0, 1, 0, 0, 0],
                [0, 0, 0, 1, 0, 0],
                [0, 0, 0, 0, 1, 0],
                [0, 0, 0, 0, 0, 0],
            ],
        ),
        (
            Monomial::new(0, 0, 2),
            [
                [0, 0, 0, 0, 0, 2],
                [0, -2, 0, 0, 0, 0],
                [0, 0, 0, -2, 0, 0],
                [0, 0, -2, 0, 0, 0],
                [0, 0, 0, 0, -2, 0],
                [2, 0, 0, 0, 0, 0],
            ],
        ),
        (
            Monomial::new(2, 0, 0),
            [
                [2, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0],
            ],
        ),
        (
            Monomial::new(0, 2, 0),
            [
                [0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 2],
            ],
        ),
        (
            Monomial::new(1, 0, 1),
            [
                [0, 0, 1, -1, 0, 0],
                [0, 0, 0, 0, 0, 0],
                [1, 0, 0, 0, 0, 0],
                [-1, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0],
            ],
        ),
        (
            Monomial::new(0, 1, 1),
            [
                [0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 1],
                [0, 0, 0, 0, 0, -1],
                [0, 0, 0, 0, 0, 0],
                [0, 0, 1, -1, 0, 0],
            ],
        ),
    ]
}

fn hermitian(out: &mut Items) -> abelcone::Result<()> {
    let r = ring(2)?;
    for (m, expected) in expected_hermitian() {
        let h = hermitian_matrix(&r, &r.monomial(m))?;
        let mismatches = (0..6)
            .flat_map(|i| (0..6).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                let e = h.get(i, j);
                !e.im.is_zero() || e.re != int(expected[i][j])
            })
            .count();
        out.push(
            format!("h[{}]", m.key()),
            format!("hermitian matrix of {} matches the listed 6x6 matrix", m.key()),
            format!("{mismatches} mismatched entries"),
            mismatches == 0,
        );
    }
    Ok(())
}

/// `4θ₁θ₂ + λ²` and `2θ₁² + 2θ₂² − λ²`.
pub fn nef_product_classes(r: &CanonicalRing) -> abelcone::Result<(CanonicalClass<Q>, CanonicalClass<Q>)> {
    let x = r.from_monomials(2, &[(Monomial::new(1, 1, 0), int(4)), (Monomial::new(0, 0, 2), int(1))])?;
    let y = r.from_monomials(
        2,
        &[(Monomial::new(2, 0, 0), int(2)), (Monomial::new(0, 2, 0), int(2)), (Monomial::new(0, 0, 2), int(-1))],
    )?;
    Ok((x, y))
}

fn nef_product(out: &mut Items) -> abelcone::Result<()> {
    let r = ring(2)?;
    let (x, y) = nef_product_classes(&r)?;
    let v = r.mul(&x, &y)?.top_value().unwrap_or_else(Q::zero);
    out.push("product", "(4 t1*t2 + l^2)(2 t1^2 + 2 t2^2 - l^2) = -8", q(&v), v == int(-8));
    for (id, c) in [("nef-x", &x), ("nef-y", &y)] {
        let verdict = is_nef_canonical(&r, c)?;
        let ok = verdict.is_member() && verdict.revalidate(&r, c)?;
        out.push(id, format!("{} is nef", r.describe(c)), format!("{:?}", verdict.status), ok);
    }
    Ok(())
}

pub fn nef_mu_cases() -> Vec<(Q, Status)> {
    vec![
        (int(-1), Status::Member),
        (int(0), Status::Member),
        (int(1), Status::Member),
        (rat(3, 2), Status::Member),
        (rat(-101, 100), Status::NonMember),
        (rat(151, 100), Status::NonMember),
    ]
}

fn nef_mu(out: &mut Items) -> abelcone::Result<()> {
    let r = ring(2)?;
    for (t, expected) in nef_mu_cases() {
        let x = r.mu_t(&t);
        let v = is_nef_canonical(&r, &x)?;
        let witness = match &v.certificate {
            Certificate::DivisorPair(w) => format!(" at (a, b) = ({}, {}), value {}", q(&w.a), q(&w.b), q(&w.value)),
            _ => String::new(),
        };
        let ok = v.status == expected && v.revalidate(&r, &x)?;
        out.push(
            format!("t={}", q(&t)),
            format!("mu_t is {} for t = {}", if expected == Status::Member { "nef" } else { "not nef" }, q(&t)),
            format!("{:?}{witness}", v.status),
            ok,
        );
    }
    Ok(())
}

fn mu_t(out: &mut Items, seed: u64) -> abelcone::Result<()> {
    let r = ring(2)?;
    for (t, expected) in [
        (rat(1, 2), Status::NonMember),
        (rat(-1, 2), Status::NonMember),
        (int(1), Status::NonMember),
        (int(-1), Status::NonMember),
        (int(0), Status::Member),
    ] {
        let x = r.mu_t(&t);
        let v = is_semipositive(&r, &x)?;
        let ok = v.status == expected && v.revalidate(&r, &x)?;
        out.push(
            format!("semi/t={}", q(&t)),
            format!("mu_t is {} for t = {}", if expected == Status::Member { "semipositive" } else { "not semipositive" }, q(&t)),
            format!("{:?}", v.status),
            ok,
        );
    }
    let opts = WeakOptions { restarts: WEAK_RESTARTS, seed, tol: WEAK_TOL, ..WeakOptions::default() };
    for t in [rat(11, 10), rat(-11, 10)] {
        let x = r.mu_t(&t);
        let v = weak_positivity_oracle(&r, &x, &opts)?;
        let (observed, ok) = match &v.certificate {
            Certificate::Covectors(w) => (
                format!("{:?}, exact value {}", v.status, q(&w.value)),
                v.is_non_member() && v.certified && w.value.is_negative() && v.revalidate(&r, &x)?,
            ),
            _ => (format!("{:?}", v.status), false),
        };
        out.push(format!("weak/t={}", q(&t)), format!("mu_t is not weakly positive for t = {}", q(&t)), observed, ok);
    }
    for t in [int(1), int(-1), int(0)] {
        let x = r.mu_t(&t);
        let v = weak_positivity_oracle(&r, &x, &opts)?;
        let (observed, ok) = match &v.certificate {
            Certificate::Search(s) => (
                format!("{:?} (supported), min objective {:.3e} over {} restarts", v.status, s.min_objective, s.restarts),
                v.is_member() && s.min_objective >= -WEAK_TOL && s.restarts >= WEAK_RESTARTS,
            ),
            _ => (format!("{:?}", v.status), false),
        };
        out.push(format!("weak/t={}", q(&t)), format!("mu_t is weakly positive for t = {}", q(&t)), observed, ok);
    }
    Ok(())
}

/// Outcome of the Sym² sampling experiment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sym2Stats {
    pub samples: usize,
    pub interior: usize,
    pub interior_certified: usize,
    pub certified: usize,
    pub revalidated: usize,
}

impl Sym2Stats {
    pub fn rate(&self) -> f64 {
        if self.interior == 0 {
            return 1.0;
        }
        self.interior_certified as f64 / self.interior as f64
    }
}

pub fn sym2_sampling(rng: &mut ChaCha8Rng, samples: usize) -> abelcone::Result<Sym2Stats> {
    let r = ring(2)?;
    let grid = default_grid();
    let shift = r
        .from_monomials(
            2,
            &[(Monomial::new(2, 0, 0), int(1)), (Monomial::new(1, 1, 0), int(2)), (Monomial::new(0, 2, 0), int(1))],
        )?
        .scale(&sym2_margin());
    let mut stats = Sym2Stats { samples, interior: 0, interior_certified: 0, certified: 0, revalidated: 0 };
    for _ in 0..samples {
        let x = sample::semipositive_class(rng, &r);
        let interior = is_semipositive(&r, &x.sub(&shift)?)?.is_member();
        let v = decompose_sym2(&r, &x, &grid, LpMode::Exact)?;
        if let Certificate::Decomposition(d) = &v.certificate {
            stats.certified += 1;
            if d.revalidate(&r, &x)? && v.revalidate(&r, &x)? {
                stats.revalidated += 1;
            }
            if interior {
                stats.interior_certified += 1;
            }
        }
        if interior {
            stats.interior += 1;
        }
    }
    Ok(stats)
}

fn sym2(out: &mut Items, rng: &mut ChaCha8Rng) -> abelcone::Result<()> {
    let s = sym2_sampling(rng, SYM2_SAMPLES)?;
    out.push(
        "interior-rate",
        format!(
            "at least {:.0}% of interior semipositive samples decompose over the default grid",
            SYM2_MIN_RATE * 100.0
        ),
        format!("{}/{} interior certified ({} samples)", s.interior_certified, s.interior, s.samples),
        s.interior > 0 && s.rate() >= SYM2_MIN_RATE,
    );
    out.push(
        "re-expansion",
        "every decomposition re-expands exactly to its input",
        format!("{}/{}", s.revalidated, s.certified),
        s.revalidated == s.certified,
    );
    Ok(())
}

fn power_formulas(out: &mut Items, rng: &mut ChaCha8Rng) -> abelcone::Result<()> {
    for n in 1..=4 {
        let samples = if n == 4 { POWER_FORMULA_SAMPLES_N4 } else { POWER_FORMULA_SAMPLES };
        for k in 0..=n {
            let mut ok = 0;
            for _ in 0..samples {
                let alpha = sample::h2_class(rng, n);
                if check_prodform(n, k, &alpha)?.holds() {
                    ok += 1;
                }
            }
            out.push(
                format!("n{n}/k{k}"),
                format!("Pontryagin power formulas for alpha in H^2, n = {n}, k = {k}"),
                format!("{ok}/{samples}"),
                ok == samples,
            );
        }
    }
    Ok(())
}

fn cm(out: &mut Items) -> abelcone::Result<()> {
    let archived: CmWitness = serde_json::from_str(CM_WITNESS_N4_K2)
        .map_err(|e| abelcone::Error::InvalidArgument(format!("archived witness: {e}")))?;
    let check = archived.revalidate()?;
    out.push(
        "archived",
        "archived eta (PSD, rank one, not strong) pairs negatively with a weakly positive phi",
        format!("pairing {}", archived.pairing),
        check.all(),
    );
    let fresh = semi_not_strong_witness(4, 2)?;
    out.push(
        "reproduced",
        "a fresh witness search reproduces the archived witness",
        if fresh.as_ref() == Some(&archived) { "identical" } else { "differs" },
        fresh.as_ref() == Some(&archived),
    );
    Ok(())
}

/// One aligned line per item, then a summary.
pub fn render_text(report: &Report) -> String {
    let mut s = String::new();
    for i in &report.items {
        s.push_str(&format!(
            "{}  {:<10} {:<22} {}  [{}]\n",
            if i.pass { "PASS" } else { "FAIL" },
            i.section,
            i.id,
            i.claim,
            i.observed
        ));
    }
    s.push_str(&format!("{} passed, {} failed\n", report.passed, report.failed));
    s
}
