use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use birack::{
    birack_polynomial, enumerate_labelings, parse_matrix, subbirack_polynomial, verify_axioms, Diagram, FiniteBirack,
    Group, InvariantKind, InvariantReport, Permutation, Poly,
};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(name = "birack", version, about = "Finite biracks and birack counting invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every birack axiom and report each one
    Verify {
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build a birack from one of the standard families
    Make {
        #[command(subcommand)]
        family: Family,
    },
    /// Print the birack rank
    Rank { matrix: PathBuf },
    /// Print the kink map and structural flags
    Classify {
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List all subbiracks with their subbirack polynomials
    Subbiracks {
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the birack polynomial, or a subbirack polynomial with --subset
    Poly {
        matrix: PathBuf,
        /// Comma-separated 1-indexed elements of a subbirack
        #[arg(long)]
        subset: Option<String>,
    },
    /// Compute an invariant of one link
    Invariant {
        #[command(flatten)]
        opts: InvariantOpts,
        #[arg(long)]
        gauss: String,
    },
    /// Compute invariants for every link in a file of `name<TAB>gauss-code` lines
    Batch {
        #[command(flatten)]
        opts: InvariantOpts,
        #[arg(long)]
        links: PathBuf,
    },
    /// List the labelings of a framed diagram
    Labelings {
        #[arg(long)]
        birack: PathBuf,
        #[arg(long)]
        gauss: String,
        /// Comma-separated writhe per component, reduced mod the rank; the diagram as given if omitted
        #[arg(long)]
        framing: Option<String>,
        #[arg(long)]
        count_only: bool,
    },
    /// List every birack of a small order
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
}

#[derive(Args)]
struct InvariantOpts {
    #[arg(long)]
    birack: PathBuf,
    /// integral, writhe, image, rho or all; may be repeated
    #[arg(long = "type", required = true, value_parser = parse_kinds)]
    kinds: Vec<Vec<InvariantKind>>,
    /// Subtract the value of the unlink with the same number of components
    #[arg(long)]
    normalize: bool,
    #[arg(long)]
    json: bool,
}

fn parse_kinds(s: &str) -> Result<Vec<InvariantKind>, String> {
    if s == "all" {
        Ok(InvariantKind::ALL.to_vec())
    } else {
        s.parse().map(|k| vec![k])
    }
}

#[derive(Subcommand)]
enum Family {
    /// Linear birack B(x,y) = (ty + sx, rx) over (Z_n)^m
    Tsr {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Constant action birack B(x,y) = (tau(y), rho(x))
    Ca {
        #[arg(long)]
        tau: String,
        #[arg(long)]
        rho: String,
        #[arg(long)]
        size: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Group birack B(x,y) = (tau(y)sigma(x), rho(x)) from a Cayley table and map files
    Tsrho {
        /// n rows of n 1-indexed products
        #[arg(long)]
        group: PathBuf,
        /// Each map file holds the n 1-indexed images of 1..n
        #[arg(long)]
        tau: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long)]
        rho: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

type Outcome = Result<String, Failure>;

/// A domain failure: `stdout` is still printed before `message` goes to stderr.
struct Failure {
    stdout: String,
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { stdout: String::new(), message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::from(format!("{}: {}", path.display(), e)))
}

fn load_birack(path: &Path) -> Result<FiniteBirack, Failure> {
    Ok(FiniteBirack::from_tables(parse_matrix(&read(path)?)?)?)
}

fn parse_index_list(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Failure::from(format!("bad number {:?}", t))))
        .collect()
}

fn one_based_set(text: &str, n: usize) -> Result<BTreeSet<usize>, Failure> {
    parse_index_list(text)?
        .into_iter()
        .map(|e| {
            if (1..=n).contains(&e) {
                Ok(e - 1)
            } else {
                Err(Failure::from(format!("element {} is outside 1..={}", e, n)))
            }
        })
        .collect()
}

fn format_set(s: &BTreeSet<usize>) -> String {
    let items: Vec<String> = s.iter().map(|e| (e + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn emit_matrix(b: &FiniteBirack, output: Option<PathBuf>) -> Outcome {
    let text = birack::format_matrix(b);
    match output {
        Some(path) => {
            fs::write(&path, &text).map_err(|e| Failure::from(format!("{}: {}", path.display(), e)))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn read_map(path: &Path, n: usize) -> Result<Vec<usize>, Failure> {
    let images = parse_index_list(&read(path)?)?;
    if images.len() != n || images.iter().any(|&v| v == 0 || v > n) {
        return Err(Failure::from(format!("{}: expected {} images in 1..={}", path.display(), n, n)));
    }
    Ok(images.into_iter().map(|v| v - 1).collect())
}

fn make(family: Family) -> Outcome {
    match family {
        Family::Tsr { n, t, s, r, m, output } => emit_matrix(&birack::tsr_birack(n, t, s, r, m)?, output),
        Family::Ca { tau, rho, size, output } => {
            let tau = Permutation::from_cycles(size, &tau)?;
            let rho = Permutation::from_cycles(size, &rho)?;
            emit_matrix(&birack::constant_action(&tau, &rho)?, output)
        }
        Family::Tsrho { group, tau, sigma, rho, output } => {
            let rows: Vec<Vec<usize>> = read(&group)?
                .lines()
                .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
                .map(|l| {
                    parse_index_list(l).map(|r| r.into_iter().map(|v| v.wrapping_sub(1)).collect::<Vec<usize>>())
                })
                .collect::<Result<_, _>>()?;
            let g = Group::from_table(&rows)?;
            let n = g.order();
            let b = birack::tau_sigma_rho_birack(&g, &read_map(&tau, n)?, &read_map(&sigma, n)?, &read_map(&rho, n)?)?;
            emit_matrix(&b, output)
        }
    }
}

fn verify(path: &Path, json: bool) -> Outcome {
    let report = verify_axioms(&parse_matrix(&read(path)?)?);
    let text = if json {
        let mut v = serde_json::to_value(&report)?;
        v["valid"] = json!(report.passed());
        format!("{}\n", serde_json::to_string_pretty(&v)?)
    } else {
        format!("{}\n", report)
    };
    if report.passed() {
        return Ok(text);
    }
    let reasons: Vec<&str> = report.checks.iter().filter_map(|c| c.violation.as_ref()).map(|v| v.reason()).collect();
    Err(Failure { stdout: text, message: format!("not a birack: {}", reasons.join(", ")) })
}

fn classify(path: &Path, json: bool) -> Outcome {
    let b = load_birack(path)?;
    let c = b.classify();
    if json {
        let v = json!({
            "n": b.n(),
            "kink_map": b.kink_map().to_string(),
            "rank": b.rank(),
            "classification": c,
        });
        return Ok(format!("{}\n", serde_json::to_string_pretty(&v)?));
    }
    let mut out = String::new();
    writeln!(out, "n            {}", b.n()).unwrap();
    writeln!(out, "kink map     {}", b.kink_map()).unwrap();
    writeln!(out, "rank         {}", b.rank()).unwrap();
    for (name, flag) in [
        ("biquandle", c.is_biquandle),
        ("rack", c.is_rack),
        ("quandle", c.is_quandle),
        ("semiquandle", c.is_semiquandle),
        ("simple", c.is_simple),
    ] {
        writeln!(out, "{:<12} {}", name, if flag { "yes" } else { "no" }).unwrap();
    }
    Ok(out)
}

fn subbiracks(path: &Path, json: bool) -> Outcome {
    let b = load_birack(path)?;
    let rows: Vec<(BTreeSet<usize>, Poly)> = b
        .all_subbiracks()
        .into_iter()
        .map(|s| {
            let p = subbirack_polynomial(&b, &s).expect("closed by construction");
            (s, p)
        })
        .collect();
    if json {
        let v: Vec<_> = rows
            .iter()
            .map(|(s, p)| {
                json!({
                    "elements": s.iter().map(|e| e + 1).collect::<Vec<_>>(),
                    "polynomial": p.canonical_string(),
                })
            })
            .collect();
        return Ok(format!("{}\n", serde_json::to_string_pretty(&v)?));
    }
    Ok(rows.iter().map(|(s, p)| format!("{}\t{}\n", format_set(s), p)).collect())
}

fn poly(path: &Path, subset: Option<String>) -> Outcome {
    let b = load_birack(path)?;
    let p: Poly = match subset {
        Some(text) => subbirack_polynomial(&b, &one_based_set(&text, b.n())?)?,
        None => birack_polynomial(&b),
    };
    Ok(format!("{}\n", p))
}

struct Link {
    name: Option<String>,
    diagram: Diagram,
}

fn invariants(opts: &InvariantOpts, links: &[Link]) -> Outcome {
    let b = load_birack(&opts.birack)?;
    let kinds: Vec<InvariantKind> = opts.kinds.iter().flatten().copied().collect();
    let birack_file = Some(opts.birack.display().to_string());
    let single = links.len() == 1 && links[0].name.is_none();
    let mut out = String::new();
    for link in links {
        for &kind in &kinds {
            let report = InvariantReport::build(kind, opts.normalize, &link.diagram, &b, birack_file.clone())?;
            if opts.json {
                let mut v = serde_json::to_value(&report)?;
                if let Some(name) = &link.name {
                    v["name"] = json!(name);
                }
                writeln!(out, "{}", serde_json::to_string(&v)?).unwrap();
            } else if single && kinds.len() == 1 {
                writeln!(out, "{}", report.value_canonical_string).unwrap();
            } else {
                let name = link.name.as_deref().unwrap_or("-");
                writeln!(out, "{}\t{}\t{}", name, kind, report.value_canonical_string).unwrap();
            }
        }
    }
    Ok(out)
}

fn read_links(path: &Path) -> Result<Vec<Link>, Failure> {
    read(path)?
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            let (name, code) = l
                .split_once('\t')
                .ok_or_else(|| Failure::from(format!("{}:{}: expected name<TAB>gauss-code", path.display(), i + 1)))?;
            let diagram = Diagram::parse(code.trim())
                .map_err(|e| Failure::from(format!("{}:{}: {}", path.display(), i + 1, e)))?;
            Ok(Link { name: Some(name.trim().to_string()), diagram })
        })
        .collect()
}

fn labelings(birack: &Path, gauss: &str, framing: Option<String>, count_only: bool) -> Outcome {
    let b = load_birack(birack)?;
    let mut d = Diagram::parse(gauss)?;
    if let Some(text) = framing {
        let w: Vec<i64> = parse_index_list(&text)?.into_iter().map(|v| v as i64).collect();
        d = d.with_framing(&w, b.rank())?;
    }
    let ls = enumerate_labelings(&d, &b);
    let mut out = format!("{}\n", ls.len());
    if !count_only {
        for l in &ls {
            let cells: Vec<String> = l.labels().iter().map(|x| (x + 1).to_string()).collect();
            writeln!(out, "{}", cells.join(" ")).unwrap();
        }
    }
    Ok(out)
}

fn enumerate(n: usize, count_only: bool) -> Outcome {
    let all = birack::enumerate_biracks(n)?;
    let mut out = format!("{}\n", all.len());
    if !count_only {
        for b in &all {
            out.push('\n');
            out.push_str(&birack::format_matrix(b));
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify { matrix, json } => verify(&matrix, json),
        Command::Make { family } => make(family),
        Command::Rank { matrix } => Ok(format!("{}\n", load_birack(&matrix)?.rank())),
        Command::Classify { matrix, json } => classify(&matrix, json),
        Command::Subbiracks { matrix, json } => subbiracks(&matrix, json),
        Command::Poly { matrix, subset } => poly(&matrix, subset),
        Command::Invariant { opts, gauss } => {
            invariants(&opts, &[Link { name: None, diagram: Diagram::parse(&gauss)? }])
        }
        Command::Batch { opts, links } => invariants(&opts, &read_links(&links)?),
        Command::Labelings { birack, gauss, framing, count_only } => labelings(&birack, &gauss, framing, count_only),
        Command::Enumerate { n, count_only } => enumerate(n, count_only),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out);
            ExitCode::SUCCESS
        }
        Err(f) => {
            print!("{}", f.stdout);
            eprintln!("error: {}", f.message);
            ExitCode::from(1)
        }
    }
}
