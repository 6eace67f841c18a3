use std::path::{Path, PathBuf};
use std::str::FromStr;

use abelcone::canring::CanonicalClass;
use abelcone::cm::{semi_not_strong_witness, CmWitness};
use abelcone::fourier::{check_prodform, fourier_d, fourier_d_inv, pontryagin};
use abelcone::positivity::sym2::rational_grid;
use abelcone::positivity::{
    decompose_sym2, is_nef_canonical, is_semipositive, psef_curve_test, psef_divisor_test, weak_positivity_oracle,
    Certificate, ConeVerdict, LpMode, Status, WeakOptions,
};
use abelcone::scalar::format_rational;
use abelcone::{CanonicalRing, Rational as Q};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::doc::{load, ClassDocument};
use crate::sample;
use crate::verify::{self, Section, VerifyOptions};

pub const EXIT_MEMBER: i32 = 0;
pub const EXIT_NON_MEMBER: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "abelcone", version, about = "Canonical intersection ring of A x A and its positivity cones")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiply two classes; prints a class document, or a number in top degree.
    Product {
        x: PathBuf,
        y: PathBuf,
        /// Print decimal approximations instead of exact rationals.
        #[arg(long)]
        float: bool,
    },
    /// Decide membership of a class in a cone.
    Member {
        #[arg(value_enum)]
        cone: Cone,
        x: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        lp: LpArgs,
        #[arg(long)]
        json: bool,
    },
    /// Write a degree-2 class as a nonnegative combination of products of two
    /// boundary divisors.
    Decompose {
        x: PathBuf,
        #[command(flatten)]
        lp: LpArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run the reproduction suite.
    VerifyPaper {
        #[arg(long, env = "ABELCONE_SEED", default_value_t = 0)]
        seed: u64,
        /// Sections to run (comma separated); all when absent.
        #[arg(long, value_enum, value_delimiter = ',')]
        only: Vec<Section>,
        /// Genus for the genus-dependent sections.
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Check the Pontryagin power formulas and the exchange property on
    /// random classes.
    FourierCheck {
        /// Abelian dimension; 1 to 3 when absent.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, env = "ABELCONE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Produce or re-validate a semipositive class that is not strongly
    /// positive.
    CmWitness {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Re-validate an archived witness instead of searching.
        #[arg(long)]
        verify: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cone {
    Semi,
    Nef,
    Weak,
    Psef1,
    PsefCurve,
    Sym2,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, env = "ABELCONE_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct LpArgs {
    /// Grid `P,Q` of parameters p/q with |p| <= P, 1 <= q <= Q.
    #[arg(long, default_value = "4,3")]
    pub grid: GridSpec,
    /// Locate the support in floating point, then solve exactly on it.
    #[arg(long)]
    pub float: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub pmax: i64,
    pub qmax: i64,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (p, q) = s.split_once(',').ok_or_else(|| format!("expected P,Q, got `{s}`"))?;
        let pmax: i64 = p.trim().parse().map_err(|_| format!("bad P in `{s}`"))?;
        let qmax: i64 = q.trim().parse().map_err(|_| format!("bad Q in `{s}`"))?;
        if pmax < 0 || qmax < 1 {
            return Err(format!("need P >= 0 and Q >= 1, got `{s}`"));
        }
        Ok(GridSpec { pmax, qmax })
    }
}

impl LpArgs {
    fn grid(&self) -> Vec<Q> {
        rational_grid(self.grid.pmax, self.grid.qmax)
    }

    fn mode(&self) -> LpMode {
        if self.float {
            LpMode::Float
        } else {
            LpMode::Exact
        }
    }
}

/// What a command printed and its exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Self {
        Outcome { stdout, stderr: String::new(), code }
    }

    fn error(msg: impl std::fmt::Display) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), code: EXIT_ERROR }
    }
}

pub fn status_code(s: Status) -> i32 {
    match s {
        Status::Member => EXIT_MEMBER,
        Status::NonMember => EXIT_NON_MEMBER,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

pub fn run(cli: Cli) -> Outcome {
    let r = match cli.command {
        Command::Product { x, y, float } => product(&x, &y, float),
        Command::Member { cone, x, search, lp, json } => member(cone, &x, &search, &lp, json),
        Command::Decompose { x, lp, json } => decompose(&x, &lp, json),
        Command::VerifyPaper { seed, only, g, json } => verify_paper(seed, only, g, json),
        Command::FourierCheck { n, samples, seed, json } => fourier_check(n, samples, seed, json),
        Command::CmWitness { n, k, verify, json } => cm_witness(n, k, verify.as_deref(), json),
    };
    r.unwrap_or_else(Outcome::error)
}

type CmdResult = Result<Outcome, String>;

fn read_class(path: &Path) -> Result<(CanonicalRing, CanonicalClass<Q>), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    load(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn float_coeffs(ring: &CanonicalRing, x: &CanonicalClass<Q>) -> Result<String, String> {
    let keys = ring.basis_keys(x.degree()).map_err(|e| e.to_string())?;
    let coeffs: serde_json::Map<String, serde_json::Value> = keys
        .into_iter()
        .zip(x.coeffs())
        .map(|(k, c)| (k, serde_json::json!(c.to_f64().unwrap_or(f64::NAN))))
        .collect();
    let v = serde_json::json!({ "g": x.g(), "degree": x.degree(), "coeffs": coeffs });
    Ok(serde_json::to_string_pretty(&v).expect("json"))
}

fn product(x: &Path, y: &Path, float: bool) -> CmdResult {
    let (ring, x) = read_class(x)?;
    let (_, y) = read_class(y)?;
    if x.g() != y.g() {
        return Err(format!("genus mismatch: {} vs {}", x.g(), y.g()));
    }
    let total = x.degree() + y.degree();
    let g = ring.g();
    if total > 2 * g {
        return Ok(Outcome {
            stdout: "0\n".into(),
            stderr: format!("note: total degree {total} exceeds 2g = {}; the product vanishes\n", 2 * g),
            code: 0,
        });
    }
    let p = ring.mul(&x, &y).map_err(|e| e.to_string())?;
    let text = if total == 2 * g {
        let v = p.top_value().expect("top degree");
        if float {
            format!("{}", v.to_f64().unwrap_or(f64::NAN))
        } else {
            format_rational(&v)
        }
    } else if float {
        float_coeffs(&ring, &p)?
    } else {
        ClassDocument::from_class(&ring, &p).map_err(|e| e.to_string())?.to_json()
    };
    Ok(Outcome::ok(text + "\n", 0))
}

#[derive(Serialize)]
struct VerdictDoc<'a> {
    cone: Cone,
    #[serde(flatten)]
    verdict: &'a ConeVerdict,
}

fn render_verdict(cone: Cone, v: &ConeVerdict, json: bool, extra: &str) -> String {
    if json {
        return serde_json::to_string_pretty(&VerdictDoc { cone, verdict: v }).expect("json") + "\n";
    }
    let cert = serde_json::to_string_pretty(&v.certificate).expect("json");
    let mut s = format!("{:?}\n", v.status);
    if v.is_member() && !v.certified {
        s.push_str("certified: false (numerical search only)\n");
    }
    s.push_str(&format!("rule: {}\n", v.rule));
    s.push_str(extra);
    s.push_str(&format!("certificate:\n{cert}\n"));
    s
}

fn member(cone: Cone, x: &Path, search: &SearchArgs, lp: &LpArgs, json: bool) -> CmdResult {
    let (ring, x) = read_class(x)?;
    let v = match cone {
        Cone::Semi => is_semipositive(&ring, &x),
        Cone::Nef => is_nef_canonical(&ring, &x),
        Cone::Weak => {
            let opts =
                WeakOptions { restarts: search.restarts, seed: search.seed, tol: search.tol, ..WeakOptions::default() };
            weak_positivity_oracle(&ring, &x, &opts)
        }
        Cone::Psef1 => psef_divisor_test(&x),
        Cone::PsefCurve => psef_curve_test(&ring, &x),
        Cone::Sym2 => decompose_sym2(&ring, &x, &lp.grid(), lp.mode()),
    }
    .map_err(|e| e.to_string())?;
    Ok(Outcome::ok(render_verdict(cone, &v, json, ""), status_code(v.status)))
}

fn decompose(x: &Path, lp: &LpArgs, json: bool) -> CmdResult {
    let (ring, x) = read_class(x)?;
    let v = decompose_sym2(&ring, &x, &lp.grid(), lp.mode()).map_err(|e| e.to_string())?;
    let mut extra = String::new();
    if let Certificate::Decomposition(d) = &v.certificate {
        extra.push_str("x =");
        for (i, t) in d.terms.iter().enumerate() {
            let sep = if i == 0 { " " } else { " + " };
            extra.push_str(&format!("{sep}{} * theta({}) theta({})", format_rational(&t.weight), t.p, t.q));
        }
        extra.push_str("\nwhere theta(a) = t1 + a^2 t2 + a l and theta(inf) = t2\n");
    }
    Ok(Outcome::ok(render_verdict(Cone::Sym2, &v, json, &extra), status_code(v.status)))
}

fn verify_paper(seed: u64, only: Vec<Section>, g: Option<usize>, json: bool) -> CmdResult {
    let report = verify::run(&VerifyOptions { seed, only, g }).map_err(|e| e.to_string())?;
    let text = if json {
        serde_json::to_string_pretty(&report).expect("json") + "\n"
    } else {
        verify::render_text(&report)
    };
    Ok(Outcome::ok(text, if report.all_pass { 0 } else { 1 }))
}

#[derive(Serialize)]
struct FourierLine {
    n: usize,
    k: usize,
    samples: usize,
    corrected: usize,
    printed: usize,
}

#[derive(Serialize)]
struct FourierReport {
    seed: u64,
    power_formulas: Vec<FourierLine>,
    exchange_checked: usize,
    exchange_failures: usize,
    inverse_failures: usize,
    all_pass: bool,
}

fn fourier_check(n: Option<usize>, samples: usize, seed: u64, json: bool) -> CmdResult {
    let ns: Vec<usize> = match n {
        Some(n) if (1..=abelcone::fourier::MAX_N).contains(&n) => vec![n],
        Some(n) => return Err(format!("n = {n} outside 1..={}", abelcone::fourier::MAX_N)),
        None => (1..=3).collect(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines = Vec::new();
    for &n in &ns {
        for k in 0..=n {
            let mut line = FourierLine { n, k, samples, corrected: 0, printed: 0 };
            for _ in 0..samples {
                let r = check_prodform(n, k, &sample::h2_class(&mut rng, n)).map_err(|e| e.to_string())?;
                line.corrected += r.holds() as usize;
                line.printed += (r.printed_a && r.printed_b) as usize;
            }
            lines.push(line);
        }
    }
    let (mut checked, mut exchange_failures, mut inverse_failures) = (0, 0, 0);
    for &n in &ns {
        for a in 0..=2 * n {
            for b in 0..=2 * n {
                let x = sample::coh_class(&mut rng, n, a);
                let y = sample::coh_class(&mut rng, n, b);
                let lhs = fourier_d(&pontryagin(&x, &y).map_err(|e| e.to_string())?);
                let rhs = fourier_d(&x).wedge(&fourier_d(&y)).map_err(|e| e.to_string())?;
                checked += 1;
                exchange_failures += (lhs != rhs) as usize;
                inverse_failures += (fourier_d_inv(&fourier_d(&x)) != x) as usize;
            }
        }
    }
    let all_pass = lines.iter().all(|l| l.corrected == l.samples) && exchange_failures == 0 && inverse_failures == 0;
    let report =
        FourierReport { seed, power_formulas: lines, exchange_checked: checked, exchange_failures, inverse_failures, all_pass };
    let text = if json {
        serde_json::to_string_pretty(&report).expect("json") + "\n"
    } else {
        let mut s = String::from("power formulas (corrected constant includes 1/k!; printed variant for comparison)\n");
        for l in &report.power_formulas {
            s.push_str(&format!(
                "n={} k={}  corrected {}/{}  printed {}/{}\n",
                l.n, l.k, l.corrected, l.samples, l.printed, l.samples
            ));
        }
        s.push_str(&format!(
            "exchange d(x*y) = dx.dy: {} failures in {} pairs; d^-1 d = id: {} failures\n",
            report.exchange_failures, report.exchange_checked, report.inverse_failures
        ));
        s.push_str(if report.all_pass { "PASS\n" } else { "FAIL\n" });
        s
    };
    Ok(Outcome::ok(text, if report.all_pass { 0 } else { 1 }))
}

fn cm_witness(n: usize, k: usize, verify: Option<&Path>, json: bool) -> CmdResult {
    let witness = match verify {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            serde_json::from_str::<CmWitness>(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => match semi_not_strong_witness(n, k).map_err(|e| e.to_string())? {
            Some(w) => w,
            None => return Ok(Outcome::ok("Unknown: no separating form in the search family\n".into(), EXIT_UNKNOWN)),
        },
    };
    let check = witness.revalidate().map_err(|e| e.to_string())?;
    let code = if check.all() { 0 } else { 1 };
    let text = if json {
        let v = serde_json::json!({ "witness": witness, "check": check, "valid": check.all() });
        serde_json::to_string_pretty(&v).expect("json") + "\n"
    } else {
        let mut s = serde_json::to_string_pretty(&witness).expect("json") + "\n";
        s.push_str(&serde_json::to_string_pretty(&check).expect("json"));
        s.push('\n');
        s.push_str(if check.all() { "valid\n" } else { "INVALID\n" });
        s
    };
    Ok(Outcome::ok(text, code))
}
