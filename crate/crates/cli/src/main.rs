use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};
use triangle_cf::document::{ConstantsDocument, ConvergentRequest, ResultDocument};
use triangle_cf::engine::{expand, ExpandOptions, ExpansionResult, Status, DEFAULT_MAX_DIGITS};
use triangle_cf::input::InputSpec;
use triangle_cf::render::scene;
use triangle_cf::Error;

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_PRECISION: u8 = 4;
const EXIT_INVALID: u8 = 5;

/// Digits streamed for a numeric input when `--max-digits` is absent.
const NUMERIC_DEFAULT_DIGITS: usize = 40;

#[derive(Parser)]
#[command(name = "triangle-cf", version, about = "Geodesic continued fractions for the (2,3,7) triangle group")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand a geodesic into digits and extract its fundamental unit.
    Expand(ExpandArgs),
    /// Print the digit constants a_i, b_i, c_i and check their identities.
    Constants {
        #[arg(long)]
        pretty: bool,
    },
    /// Draw the tiles B_k D visited by an expansion as SVG.
    Render(RenderArgs),
}

#[derive(Args, Clone, Debug, Default)]
struct InputArgs {
    /// Attracting endpoint: an expression, `inf`, or a numeric constant such as `e`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Repelling endpoint; defaults to the conjugate of alpha.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    /// `+` or `-`: the branch of sqrt(D) giving alpha.
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<String>,
    /// Starting matrix as a word, e.g. `g7^2 g2 g7^-2`.
    #[arg(long, allow_hyphen_values = true)]
    b0: Option<String>,
    /// Precision ceiling in bits for numeric inputs.
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long)]
    max_digits: Option<usize>,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Convergent indices: a comma list, `last`, or `all`.
    #[arg(long)]
    convergents: Option<String>,
    /// Also report traditional convergents.
    #[arg(long)]
    trad: bool,
    #[arg(long, default_value_t = 20)]
    decimals: usize,
    #[arg(long)]
    pretty: bool,
    /// File with one input per line, written as flags.
    #[arg(long)]
    batch: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 6)]
    tiles: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Parser)]
#[command(no_binary_name = true)]
struct BatchLine {
    #[command(flatten)]
    input: InputArgs,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::BudgetExhausted(_) => EXIT_BUDGET,
        Error::PrecisionExhausted(_) => EXIT_PRECISION,
        _ => EXIT_INVALID,
    }
}

fn status_code(s: &Status) -> u8 {
    match s {
        Status::Periodic { .. } | Status::NumericStream => 0,
        Status::BudgetExhausted => EXIT_BUDGET,
        Status::PrecisionExhausted(_) => EXIT_PRECISION,
    }
}

impl InputArgs {
    fn spec(&self) -> InputSpec {
        InputSpec {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            z: self.z.clone(),
            w: self.w.clone(),
            sign: self.sign.clone(),
            b0: self.b0.clone(),
            max_precision: self.precision,
        }
    }

    fn label(&self) -> (String, String) {
        match (&self.alpha, &self.z) {
            (Some(a), _) => (a.clone(), self.beta.clone().unwrap_or_default()),
            (None, Some(z)) => (
                format!("z = {z}, w = {}, sign {}", self.w.as_deref().unwrap_or("?"), self.sign.as_deref().unwrap_or("+")),
                self.beta.clone().unwrap_or_default(),
            ),
            _ => (String::new(), String::new()),
        }
    }

    fn run(&self, default_numeric_digits: usize) -> Result<ExpansionResult, Error> {
        let s = self.spec().build()?;
        let max_digits = self.max_digits.unwrap_or(if s.numeric { default_numeric_digits } else { DEFAULT_MAX_DIGITS });
        let opts = ExpandOptions { max_digits, ..Default::default() };
        expand(&s.geodesic, s.ctx, s.b0, &opts)
    }
}

fn convergent_indices(sel: Option<&str>, r: &ExpansionResult) -> Result<Vec<usize>, Error> {
    let n = r.digits.len();
    match sel.map(str::trim) {
        None => Ok(if r.status == Status::NumericStream { vec![n] } else { Vec::new() }),
        Some("last") => Ok(vec![n]),
        Some("all") => Ok((0..=n).collect()),
        Some(list) => list
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad convergent index `{t}`"))))
            .collect(),
    }
}

fn expand_one(input: &InputArgs, args: &ExpandArgs) -> (ResultDocument, u8) {
    let (alpha, beta) = input.label();
    let r = match input.run(NUMERIC_DEFAULT_DIGITS) {
        Ok(r) => r,
        Err(e) => return (ResultDocument::failure(&alpha, &beta, &e), exit_code(&e)),
    };
    let indices = match convergent_indices(args.convergents.as_deref(), &r) {
        Ok(i) => i,
        Err(e) => return (ResultDocument::failure(&alpha, &beta, &e), exit_code(&e)),
    };
    let req = ConvergentRequest { indices, traditional: args.trad, decimals: args.decimals };
    (ResultDocument::from_result(&r, &req), status_code(&r.status))
}

fn pretty(doc: &ResultDocument) -> String {
    let mut s = String::new();
    let mut line = |k: &str, v: &str| s.push_str(&format!("{k:<14}{v}\n"));
    line("alpha", &doc.alpha);
    line("beta", &doc.beta);
    if let Some(d) = &doc.d {
        line("D", &format!("[{}]", d.join(", ")));
    }
    line("B0", doc.b0_word.as_deref().unwrap_or("(no word)"));
    let ds: Vec<String> = doc.digits.iter().map(ToString::to_string).collect();
    let body = match (doc.preperiod, doc.period) {
        (Some(k0), Some(l0)) => {
            let (pre, per) = ds.split_at(k0);
            let per = &per[..l0.min(per.len())];
            let mut parts: Vec<String> = pre.to_vec();
            parts.push(format!("({})", per.join(", ")));
            parts.join(", ")
        }
        _ => ds.join(", "),
    };
    line("expansion", &format!("[{}; {}]", doc.b0_word.as_deref().unwrap_or("B0"), body));
    let status = match (doc.preperiod, doc.period) {
        (Some(k0), Some(l0)) => format!("{} (preperiod {k0}, period {l0})", doc.status),
        _ => doc.status.clone(),
    };
    line("status", &status);
    if let Some(u) = &doc.unit {
        line("gamma0 word", u.word.as_deref().unwrap_or("-"));
        line("gamma0 z", &format!("[{}]", u.matrix_z.join(", ")));
        line("gamma0 w", &format!("[{}]", u.matrix_w.join(", ")));
        if let Some(r) = &u.rho_alpha {
            line("epsilon0", &r.text);
        }
    }
    if let Some(cf) = &doc.continued_fraction {
        line("fraction", cf);
    }
    for c in &doc.convergents {
        line(&format!("x_{}^{}", c.kind, c.k), &c.value);
    }
    if let Some(e) = &doc.error {
        line("error", &format!("{}: {}", e.kind, e.message));
    }
    s
}

fn emit(out: &mut impl Write, doc: &ResultDocument, human: bool) -> std::io::Result<()> {
    if human {
        write!(out, "{}", pretty(doc))
    } else {
        writeln!(out, "{}", doc.to_json())
    }
}

fn parse_batch(text: &str) -> Vec<Result<InputArgs, String>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let words = shlex::split(l).ok_or_else(|| format!("unbalanced quotes in `{l}`"))?;
            BatchLine::try_parse_from(words).map(|b| b.input).map_err(|e| e.to_string())
        })
        .collect()
}

fn run_batch(path: &PathBuf, args: &ExpandArgs) -> u8 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_IO;
        }
    };
    let lines = parse_batch(&text);
    let results: Vec<Mutex<Option<(ResultDocument, u8)>>> = lines.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .clamp(1, lines.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(line) = lines.get(i) else { break };
                let r = match line {
                    Ok(input) => expand_one(input, args),
                    Err(msg) => {
                        let e = Error::Parse(msg.clone());
                        (ResultDocument::failure("", "", &e), EXIT_PARSE)
                    }
                };
                *results[i].lock().unwrap() = Some(r);
            });
        }
    });
    let mut code = 0;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for r in results {
        let (doc, c) = r.into_inner().unwrap().expect("every line processed");
        if emit(&mut out, &doc, args.pretty).is_err() {
            return EXIT_IO;
        }
        if code == 0 {
            code = c;
        }
    }
    code
}

fn cmd_expand(args: &ExpandArgs) -> u8 {
    if let Some(path) = &args.batch {
        return run_batch(path, args);
    }
    let (doc, code) = expand_one(&args.input, args);
    if emit(&mut std::io::stdout().lock(), &doc, args.pretty).is_err() {
        return EXIT_IO;
    }
    if let Some(e) = &doc.error {
        eprintln!("error: {}: {}", e.kind, e.message);
    }
    code
}

fn cmd_constants(human: bool) -> u8 {
    let doc = ConstantsDocument::compute();
    let mut text = String::new();
    if human {
        for r in &doc.rows {
            text += &format!("i = {:>2}\n", r.digit);
            text += &format!("  a = {}  ({})\n", r.a, r.a_value);
            text += &format!("  b = {}\n", r.b);
            text += &format!("  c = {}\n", r.c);
        }
        for c in &doc.checks {
            text += &format!("{:<40}{}\n", c.name, if c.pass { "pass" } else { "FAIL" });
        }
    } else {
        text = serde_json::to_string(&doc).expect("constants serialize") + "\n";
    }
    if std::io::stdout().lock().write_all(text.as_bytes()).is_err() {
        return EXIT_IO;
    }
    if doc.all_pass() {
        0
    } else {
        EXIT_INVALID
    }
}

fn cmd_render(args: &RenderArgs) -> u8 {
    let mut input = args.input.clone();
    input.max_digits = Some(input.max_digits.unwrap_or(0).max(args.tiles));
    let r = match input.run(args.tiles) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let svg = match scene(&r, args.tiles) {
        Ok(s) => s.to_svg(),
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &args.out {
        Some(p) => std::fs::write(p, svg),
        None => std::io::stdout().lock().write_all(svg.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_IO;
    }
    0
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.cmd {
        Cmd::Expand(a) => cmd_expand(a),
        Cmd::Constants { pretty } => cmd_constants(*pretty),
        Cmd::Render(a) => cmd_render(a),
    };
    ExitCode::from(code)
}
