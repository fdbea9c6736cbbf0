use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use strlink::braid::parse_braid;
use strlink::linalg::Matrix;
use strlink::randomwalk::{ltw, truncated_series_oracle, ClosurePresentation};
use strlink::registry::graded_invariants;
use strlink::ring::{rational_to_f64, Ring, Rational};
use strlink::verify::{example_s, random_suite, run_suite, verify_presentation, SuiteSpec, VerificationReport};
use strlink::Error;

/// Exact random-walk and R-matrix invariants of string links presented as partial braid closures.
#[derive(Parser, Debug)]
#[command(name = "strlink", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for suites.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print an invariant of one string link.
    Compute {
        #[command(flatten)]
        link: LinkArgs,
        /// ltw, ohtsuki or brt.
        #[arg(long, default_value = "ltw")]
        invariant: String,
        /// `all` or a grade `0..=n`.
        #[arg(long, default_value = "all")]
        grade: Grade,
    },
    /// Check the theorem, divisibility, evaluation paths, eigenvectors and equivariance.
    Verify {
        #[command(flatten)]
        link: LinkArgs,
        /// Run a seeded suite of random string links instead of one presentation.
        #[arg(long)]
        random: bool,
        /// Largest number of open strands in the suite.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Largest number of closed strands in the suite.
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
    /// Compare the truncated geometric series for the random walk with the exact matrix.
    Oracle {
        #[command(flatten)]
        link: LinkArgs,
        /// Number of terms `N` of the series.
        #[arg(long, default_value_t = 60)]
        terms: usize,
        /// Evaluation point, `p/q` or decimal, strictly between 0 and 1.
        #[arg(long, default_value = "9/10")]
        t0: String,
    },
}

#[derive(Args, Debug)]
struct LinkArgs {
    /// Open strands `n`.
    #[arg(long)]
    strands: Option<usize>,
    /// Closed strands `m` (the rightmost ones).
    #[arg(long, default_value_t = 0)]
    close: usize,
    /// Braid word on `n + m` strands, e.g. "2 -1 2".
    #[arg(long, allow_hyphen_values = true)]
    braid: Option<String>,
    /// Use the pinned presentation of the example link S.
    #[arg(long)]
    example_s: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Grade {
    All,
    One(usize),
}

impl FromStr for Grade {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(Grade::All);
        }
        s.parse().map(Grade::One).map_err(|_| format!("expected `all` or a grade, got `{s}`"))
    }
}

/// Failure with its exit code.
struct Fail {
    code: u8,
    message: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotStringLink { .. } => 3,
            _ => 2,
        };
        Fail { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Fail {
    Fail { code: 2, message: message.into() }
}

impl LinkArgs {
    fn presentation(&self) -> Result<ClosurePresentation, Fail> {
        if self.example_s {
            return Ok(example_s());
        }
        let n = self.strands.ok_or_else(|| input_error("--strands is required (or --example-s)"))?;
        if n == 0 {
            return Err(input_error("--strands must be at least 1"));
        }
        let text = self.braid.as_deref().unwrap_or("");
        let braid = parse_braid(text, n + self.close)?;
        Ok(ClosurePresentation::new(n, self.close, braid)?)
    }
}

fn describe(cp: &ClosurePresentation) -> String {
    format!("n={}, m={}, braid \"{}\" (writhe {})", cp.n(), cp.m(), cp.braid(), cp.writhe())
}

fn compute(link: &LinkArgs, invariant: &str, grade: Grade, format: Format) -> Result<String, Fail> {
    let cp = link.presentation()?;
    let registry = graded_invariants();
    let inv = registry.get(invariant)?;
    let grades: Vec<usize> = match grade {
        Grade::All => (0..=cp.n()).collect(),
        Grade::One(k) if k <= cp.n() => vec![k],
        Grade::One(k) => return Err(Error::BadGrade { grade: k, max: cp.n() }.into()),
    };
    let components = inv.components(&cp)?;
    let denominator = if inv.name() == "ltw" { Some(ltw(&cp)?.denominator) } else { None };
    // the scalar component of the functor specializes to 1 at t = 1
    let scalar_at_one = match (inv.name(), grades.contains(&0)) {
        ("ohtsuki", true) => Some(components[0].get(0, 0).specialize_t1()?),
        _ => None,
    };

    if format == Format::Json {
        let mut out = json!({
            "invariant": inv.name(),
            "presentation": cp,
            "components": grades.iter().map(|&k| json!({"grade": k, "matrix": components[k]})).collect::<Vec<_>>(),
        });
        if let Some(d) = &denominator {
            out["denominator"] = json!(d);
        }
        if let Some(v) = &scalar_at_one {
            out["grade0_at_t1"] = json!(v.to_string());
        }
        return Ok(serde_json::to_string_pretty(&out).expect("serializable"));
    }
    let mut out = vec![format!("{}: {}", inv.name(), inv.summary()), describe(&cp)];
    if let Some(d) = denominator {
        out.push(format!("det(I - Q) = {d}"));
    }
    for k in grades {
        out.push(format!("grade {k}:"));
        out.push(components[k].to_string());
    }
    if let Some(v) = scalar_at_one {
        out.push(format!("grade 0 at t = 1: {v}"));
    }
    Ok(out.join("\n"))
}

fn render_reports(reports: &[VerificationReport], format: Format) -> String {
    if format == Format::Json {
        let value: Value = if reports.len() == 1 { json!(reports[0]) } else { json!(reports) };
        return serde_json::to_string_pretty(&value).expect("serializable");
    }
    let mut out = Vec::new();
    for r in reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        out.push(format!("{status} {} ({} checks, {:.1} ms)", describe(&r.presentation), r.checks.len(), r.elapsed_ms));
        for c in r.failures() {
            let grade = c.grade.map(|k| format!(" grade {k}")).unwrap_or_default();
            match &c.witness {
                Some(w) => out.push(format!("  {}{grade}: entry ({}, {}): {} != {}", c.name, w.row, w.col, w.lhs, w.rhs)),
                None => out.push(format!("  {}{grade}: failed", c.name)),
            }
        }
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    out.push(format!("{passed}/{} presentations passed", reports.len()));
    out.join("\n")
}

fn verify(cmd: &Command, format: Format) -> Result<(String, bool), Fail> {
    let Command::Verify { link, random, n, m, trials, seed, max_len } = cmd else { unreachable!() };
    let reports = if *random {
        if *n == 0 {
            return Err(input_error("--n must be at least 1"));
        }
        let spec = SuiteSpec { count: *trials, max_n: *n, max_m: *m, max_len: *max_len, seed: *seed };
        let suite = random_suite(&spec)?;
        run_suite(&suite, verify_presentation).into_iter().collect::<Result<Vec<_>, _>>()?
    } else {
        vec![verify_presentation(&link.presentation()?)?]
    };
    let ok = reports.iter().all(|r| r.passed);
    Ok((render_reports(&reports, format), ok))
}

/// `p/q`, an integer, or a plain decimal.
fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{whole}{frac}");
        return Rational::from_str(&format!("{digits}/1{}", "0".repeat(frac.len()))).ok();
    }
    Rational::from_str(text).ok()
}

fn max_gap(a: &Matrix<Rational>, b: &Matrix<Rational>) -> f64 {
    a.entries().iter().zip(b.entries()).map(|(x, y)| rational_to_f64(&(x - y)).abs()).fold(0.0, f64::max)
}

fn oracle(link: &LinkArgs, terms: usize, t0: &str, format: Format) -> Result<String, Fail> {
    let t = parse_rational(t0).ok_or_else(|| input_error(format!("cannot parse t0 `{t0}`")))?;
    if !(t > Rational::zero() && t < Rational::one()) {
        return Err(input_error(format!("t0 must lie strictly between 0 and 1, got {t}")));
    }
    let cp = link.presentation()?;
    let exact = ltw(&cp)?.gamma.try_map(|x| x.evaluate_t(&t))?;
    let series = truncated_series_oracle(&cp, terms, &t)?;
    let gap = max_gap(&series, &exact);
    let previous = match terms {
        0 => None,
        _ => Some(max_gap(&truncated_series_oracle(&cp, terms - 1, &t)?, &exact)),
    };
    let non_increasing = previous.map_or(true, |p| gap <= p);
    let to_f64 = |m: &Matrix<Rational>| -> Vec<Vec<f64>> {
        (0..m.rows()).map(|i| m.row(i).iter().map(rational_to_f64).collect()).collect()
    };
    if format == Format::Json {
        let out = json!({
            "presentation": cp,
            "t0": t.to_string(),
            "terms": terms,
            "series": to_f64(&series),
            "exact": to_f64(&exact),
            "max_gap": gap,
            "previous_gap": previous,
            "non_increasing": non_increasing,
        });
        return Ok(serde_json::to_string_pretty(&out).expect("serializable"));
    }
    let rows = |m: &Matrix<Rational>| {
        to_f64(m).iter().map(|r| r.iter().map(|x| format!("{x:>14.10}")).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n")
    };
    let mut out = vec![
        describe(&cp),
        format!("t0 = {t}, N = {terms}"),
        "truncated series:".into(),
        rows(&series),
        "exact Gamma(t0):".into(),
        rows(&exact),
        format!("max entrywise gap: {gap:.3e}"),
    ];
    if let Some(p) = previous {
        out.push(format!("gap at N - 1: {p:.3e} (non-increasing: {non_increasing})"));
    }
    Ok(out.join("\n"))
}

fn run(cli: &Cli) -> Result<(String, bool), Fail> {
    match &cli.command {
        Command::Compute { link, invariant, grade } => Ok((compute(link, invariant, *grade, cli.format)?, true)),
        cmd @ Command::Verify { .. } => verify(cmd, cli.format),
        Command::Oracle { link, terms, t0 } => Ok((oracle(link, *terms, t0, cli.format)?, true)),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build_global() {
        eprintln!("warning: {e}");
    }
    match run(&cli) {
        Ok((text, ok)) => {
            println!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
