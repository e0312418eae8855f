use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ringlab::abelian::{identify_type, quotient_census};
use ringlab::verifier::{
    build_corpus, desk_request, render_json, render_text, verify_ids, CorpusRequest, DedupChoice,
    RingSpec, VerifyOptions, DEFAULT_EXHAUSTIVE_ORDER,
};
use ringlab::{
    centralizer_family, direct_sum, is_cyclic, pr_centralizer_sum, pr_pairs, ring_from_file,
    ring_to_file, Corpus, FiniteRing, TheoremId,
};

const EXIT_CORPUS: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ringlab",
    version,
    about = "Centralizers and commuting probabilities of finite rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a corpus of constructed and enumerated rings.
    BuildCorpus(BuildArgs),
    /// Check theorems against a corpus.
    Verify(VerifyArgs),
    /// Commuting probability of a ring file.
    Pr(RingArgs),
    /// Distinct centralizers of a ring file.
    Cent(RingArgs),
    /// Central quotient type of a ring file.
    Quotient(RingArgs),
    /// Write a ring file for a constructed ring.
    MakeRing(MakeArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Standard corpus: triangular rings for 2,3,5,7, two direct sums, all rings of order <= 8.
    #[arg(long)]
    desk: bool,
    /// Primes p for upper-triangular 2x2 matrix rings over Z_p.
    #[arg(long, value_delimiter = ',')]
    triangular: Vec<u64>,
    /// Zero rings, given as factor lists like 2x4.
    #[arg(long)]
    zero: Vec<String>,
    /// Direct sums A+B of tri:P / zero:AxB rings.
    #[arg(long = "direct-sum")]
    direct_sum: Vec<String>,
    /// Ring files to include.
    #[arg(long = "from-file")]
    from_file: Vec<PathBuf>,
    /// Enumerate every ring on every additive group of this order.
    #[arg(long = "enumerate-order")]
    enumerate_order: Vec<u64>,
    /// Enumerate every ring on one additive group, e.g. 4,4.
    #[arg(long = "enumerate-group")]
    enumerate_group: Vec<String>,
    #[arg(long, default_value = "auto")]
    dedup: String,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Ceiling on k^2 * log2 |G| for enumeration.
    #[arg(long = "budget-bits")]
    budget_bits: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, default_value = "all")]
    theorem: String,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    /// Orders that non-existence checks require to be fully enumerated.
    #[arg(long = "exhaustive-order", default_value_t = DEFAULT_EXHAUSTIVE_ORDER)]
    exhaustive_order: u64,
}

#[derive(Args)]
struct RingArgs {
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct MakeArgs {
    /// tri:P, zero:AxB, or A+B for a direct sum.
    spec: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_spec(s: &str) -> Result<FiniteRing> {
    match s.split_once('+') {
        Some((a, b)) => {
            let a: RingSpec = a.parse()?;
            let b: RingSpec = b.parse()?;
            Ok(direct_sum(&a.build()?, &b.build()?)?)
        }
        None => Ok(s.parse::<RingSpec>()?.build()?),
    }
}

fn factor_list(s: &str, sep: char) -> Result<Vec<u64>> {
    s.split(sep)
        .map(|d| {
            d.trim()
                .parse::<u64>()
                .with_context(|| format!("bad factor list {s:?}"))
        })
        .collect()
}

fn request(args: &BuildArgs) -> Result<CorpusRequest> {
    let mut req = if args.desk {
        desk_request()
    } else {
        CorpusRequest::default()
    };
    req.triangular.extend(&args.triangular);
    for z in &args.zero {
        req.zero.push(factor_list(z, 'x')?);
    }
    for s in &args.direct_sum {
        let (a, b) = s
            .split_once('+')
            .with_context(|| format!("direct sum {s:?} needs A+B"))?;
        req.direct_sums.push((a.parse()?, b.parse()?));
    }
    req.files.extend(args.from_file.iter().cloned());
    req.enumerate_orders.extend(&args.enumerate_order);
    for g in &args.enumerate_group {
        req.enumerate_groups.push(factor_list(g, ',')?);
    }
    req.dedup = args.dedup.parse::<DedupChoice>()?;
    req.workers = args.workers;
    if let Some(b) = args.budget_bits {
        req.budget_bits = b;
    }
    Ok(req)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_ring(path: &Path) -> Result<FiniteRing> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ring_from_file(&text).with_context(|| format!("loading {}", path.display()))
}

fn build(args: BuildArgs) -> Result<ExitCode> {
    let corpus = match request(&args).and_then(|r| Ok(build_corpus(&r)?)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("ringlab: corpus build failed: {e:#}");
            return Ok(ExitCode::from(EXIT_CORPUS));
        }
    };
    emit(args.out.as_deref(), &corpus.to_lines())?;
    eprintln!(
        "ringlab: {} rings in {} sections",
        corpus.len(),
        corpus.sections.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let ids: Vec<TheoremId> = if args.theorem.eq_ignore_ascii_case("all") {
        TheoremId::ALL.to_vec()
    } else {
        args.theorem
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<_, _>>()?
    };
    let corpus = match fs::read_to_string(&args.corpus)
        .with_context(|| format!("reading {}", args.corpus.display()))
        .and_then(|t| Ok(Corpus::from_lines(&t)?))
    {
        Ok(c) => c,
        Err(e) => {
            eprintln!("ringlab: corpus load failed: {e:#}");
            return Ok(ExitCode::from(EXIT_CORPUS));
        }
    };
    let opts = VerifyOptions {
        exhaustive_order: args.exhaustive_order,
    };
    let report = verify_ids(&ids, &corpus, &opts);
    let text = if args.json {
        render_json(&report)
    } else {
        render_text(&report)
    };
    emit(args.report.as_deref(), &text)?;
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn pr(args: RingArgs) -> Result<ExitCode> {
    let r = load_ring(&args.file)?;
    let (pairs, sum) = (pr_pairs(&r), pr_centralizer_sum(&r));
    if args.json {
        println!(
            "{}",
            json!({ "order": r.order(), "pr": pairs, "pr_centralizer_sum": sum })
        );
    } else {
        println!("order {}", r.order());
        println!("pr {pairs}");
        println!("pr_centralizer_sum {sum}");
    }
    if pairs != sum {
        bail!("pair count and centralizer sum disagree");
    }
    Ok(ExitCode::SUCCESS)
}

fn cent(args: RingArgs) -> Result<ExitCode> {
    let r = load_ring(&args.file)?;
    let fam = centralizer_family(&r);
    let g = r.group();
    if args.json {
        let members: Vec<_> = fam
            .distinct
            .iter()
            .zip(&fam.witnesses)
            .map(|(s, &w)| json!({ "witness": g.element(w), "order": s.order() }))
            .collect();
        println!(
            "{}",
            json!({ "centralizers": fam.count(), "center_order": fam.center.order(), "index": fam.index, "members": members })
        );
    } else {
        println!("centralizers {}", fam.count());
        println!("center_order {}", fam.center.order());
        println!("index {}", fam.index);
        for (s, &w) in fam.distinct.iter().zip(&fam.witnesses) {
            println!(
                "  centralizer witness={:?} order={}",
                g.element(w).0,
                s.order()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn quotient(args: RingArgs) -> Result<ExitCode> {
    let r = load_ring(&args.file)?;
    let fam = centralizer_family(&r);
    let census = quotient_census(r.group(), &fam.center)?;
    let t = identify_type(&census)?;
    if args.json {
        println!(
            "{}",
            json!({ "quotient": t, "index": fam.index, "cyclic": is_cyclic(&t), "census": census.counts() })
        );
    } else {
        println!("quotient {t}");
        println!("index {}", fam.index);
        println!("cyclic {}", is_cyclic(&t));
        let c: Vec<String> = census
            .counts()
            .iter()
            .map(|(o, n)| format!("{o}:{n}"))
            .collect();
        println!("census {}", c.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

fn make(args: MakeArgs) -> Result<ExitCode> {
    let r = parse_spec(&args.spec)?;
    emit(args.out.as_deref(), &ring_to_file(&r))?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::BuildCorpus(a) => build(a),
        Command::Verify(a) => verify(a),
        Command::Pr(a) => pr(a),
        Command::Cent(a) => cent(a),
        Command::Quotient(a) => quotient(a),
        Command::MakeRing(a) => make(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ringlab: {e:#}");
            ExitCode::FAILURE
        }
    }
}
