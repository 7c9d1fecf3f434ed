use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use cameronlab::algebra::{check_psi_identities, format_element, linear_characters, psi_q, LinearCharacter};
use cameronlab::category::{automorphism_group, factorize, hom_set, parse_map, HomKind};
use cameronlab::mutation::{build_mutation_graph, export_dot};
use cameronlab::report::VerificationReport;
use cameronlab::rep::{ext_dim_fa, ext_dim_standard, hom_dim_refined, hom_dim_standard};
use cameronlab::suite::{run_suite, Suite, SuiteConfig};
use cameronlab::{CategoryId, Morphism};

#[derive(Parser)]
#[command(name = "cameronlab", version, about = "Exact representation theory of the Cameron categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print a report.
    Verify {
        /// FA, OA, CA, BA, SA or all; may be repeated or comma separated.
        #[arg(long, short, default_value = "all", value_delimiter = ',')]
        category: Vec<String>,
        /// core, graphs, homs, ext, dk, fa or all.
        #[arg(long, short, default_value = "all", value_delimiter = ',')]
        suite: Vec<String>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        max_t: Option<usize>,
        /// Degree cutoff for the FA Ext computation.
        #[arg(long)]
        fa_cutoff: Option<usize>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Zero every runtime so that reports are reproducible.
        #[arg(long)]
        no_timings: bool,
    },
    /// Dimension of Hom(Δ_m, Δ_n), optionally cut by linear characters.
    Hom {
        #[arg(long, short)]
        category: CategoryId,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// Character of G_m: `triv`, `sgn`, or values on generators such as `(+,-)`.
        #[arg(long)]
        lambda: Option<String>,
        /// Character of G_n.
        #[arg(long)]
        mu: Option<String>,
        /// Also print a basis.
        #[arg(long)]
        basis: bool,
    },
    /// Dimension of Ext¹(Δ_m, Δ_n), for CA and SA; for FA the cutoff computation.
    Ext {
        #[arg(long, short)]
        category: CategoryId,
        #[arg(long)]
        from: Option<usize>,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        mu: Option<String>,
        /// FA only: the largest evaluation object.
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// The normalization idempotent Ψ_n.
    Psi {
        #[arg(long, short)]
        category: CategoryId,
        #[arg(short)]
        n: usize,
        /// Print the identity checks instead of the element.
        #[arg(long)]
        check: bool,
    },
    /// Surjection-injection factorization of a map such as `3->3:[2,2,3]`.
    Factorize {
        #[arg(long, short)]
        category: CategoryId,
        #[arg(long)]
        map: String,
    },
    /// The mutation graph on injections [m] -> [n].
    MutationGraph {
        #[arg(long, short)]
        category: CategoryId,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
        /// Write DOT to this file, or `-` for standard output.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// CSV matrix of Hom(Δ_m, Δ_n) dimensions, rows m and columns n.
    Table {
        #[arg(long, short)]
        category: CategoryId,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn categories(names: &[String]) -> Result<Vec<CategoryId>> {
    let mut out = Vec::new();
    for name in names {
        if name.eq_ignore_ascii_case("all") {
            return Ok(CategoryId::ALL.to_vec());
        }
        let c: CategoryId = name.parse()?;
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

fn suites(names: &[String]) -> Result<Vec<Suite>> {
    if names.iter().any(|s| s.eq_ignore_ascii_case("all")) {
        return Ok(Suite::ALL.to_vec());
    }
    Ok(names.iter().map(|s| s.parse()).collect::<cameronlab::Result<Vec<_>>>()?)
}

fn character(category: CategoryId, n: usize, label: Option<&str>) -> Result<Option<LinearCharacter>> {
    let Some(label) = label else { return Ok(None) };
    let group = Arc::new(automorphism_group(category, n));
    let chars = linear_characters(&group);
    let found = match label {
        "triv" => chars.iter().find(|c| c.is_trivial()),
        "sgn" if chars.len() == 2 => chars.iter().find(|c| !c.is_trivial()),
        _ => chars.iter().find(|c| c.label() == label),
    }
    .cloned();
    found.map(Some).ok_or_else(|| {
        let known: Vec<String> = chars.iter().map(|c| c.label()).collect();
        anyhow!("no character `{label}` of G_{n} in {category}; known: {}", known.join(" "))
    })
}

fn render(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json if reports.len() == 1 => reports[0].to_json(),
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize"),
        Format::Csv => {
            let mut out = String::new();
            for (i, r) in reports.iter().enumerate() {
                let csv = r.to_csv();
                let body = if i == 0 { csv.as_str() } else { csv.split_once('\n').map_or("", |(_, b)| b) };
                out.push_str(body);
            }
            out
        }
        Format::Text => reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n"),
    }
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Verify { category, suite, max_n, max_t, fa_cutoff, threads, format, output, no_timings } => {
            let config = SuiteConfig {
                categories: categories(&category)?,
                n_max: max_n,
                t_max: max_t,
                fa_ext_cutoff: fa_cutoff,
                threads,
            };
            let mut reports = Vec::new();
            for s in suites(&suite)? {
                let r = run_suite(s, &config)?;
                reports.push(if no_timings { r.without_timings() } else { r });
            }
            let mut text = render(&reports, format);
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match output {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            let failed: usize = reports.iter().map(|r| r.summary.failed).sum();
            if failed > 0 {
                eprintln!("{failed} checks failed");
            }
            Ok(failed == 0)
        }
        Command::Hom { category, from, to, lambda, mu, basis } => {
            let l = character(category, from, lambda.as_deref())?;
            let u = character(category, to, mu.as_deref())?;
            let space = if l.is_none() && u.is_none() {
                hom_dim_standard(category, from, to)
            } else {
                hom_dim_refined(category, from, l.as_ref(), to, u.as_ref())?
            };
            println!("{}", space.dim());
            if basis {
                let len = hom_set(category, to, from, HomKind::Injective).morphisms.len();
                for v in &space.basis {
                    let dense: Vec<String> = v.to_dense(len).iter().map(|x| x.to_string()).collect();
                    println!("[{}]", dense.join(", "));
                }
            }
            Ok(true)
        }
        Command::Ext { category, from, to, mu, cutoff } => {
            if category == CategoryId::FA {
                let cutoff = cutoff.unwrap_or(to + 2);
                let e = ext_dim_fa(to, cutoff)?;
                let state = if e.stabilized { "stable" } else { "not yet stable" };
                println!("{} (cutoff {}, previous {}, {state})", e.dim, e.cutoff, e.previous);
                return Ok(true);
            }
            let from = from.ok_or_else(|| anyhow!("--from is required outside FA"))?;
            let u = character(category, to, mu.as_deref())?;
            println!("{}", ext_dim_standard(category, from, to, u.as_ref())?.dim);
            Ok(true)
        }
        Command::Psi { category, n, check } => {
            if !check {
                println!("{}", format_element(&psi_q(category, n)));
                return Ok(true);
            }
            let checks = check_psi_identities(category, n);
            for c in &checks {
                println!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.id);
            }
            Ok(checks.iter().all(|c| c.pass))
        }
        Command::Factorize { category, map } => {
            let (m, n, images) = parse_map(&map)?;
            let f = Morphism::new(category, m, n, images)?;
            let fac = factorize(&f)?;
            println!("surjective {}", fac.surjective_part);
            println!("injective  {}", fac.injective_part);
            Ok(true)
        }
        Command::MutationGraph { category, m, n, dot } => {
            let g = build_mutation_graph(category, m, n)?;
            let dot_text = export_dot(&g);
            match dot.as_deref() {
                Some(p) if p.as_os_str() == "-" => {
                    print!("{dot_text}");
                    return Ok(true);
                }
                Some(p) => fs::write(p, &dot_text).with_context(|| format!("writing {}", p.display()))?,
                None => {}
            }
            let sizes: Vec<String> = g.component_sizes().iter().map(|s| s.to_string()).collect();
            println!("vertices {}", g.vertices.len());
            println!("edges {}", g.edges.len());
            println!("components {} (sizes {})", g.component_count(), sizes.join(","));
            println!("bipartite {}", if g.signs.is_some() { "yes" } else { "not checked" });
            Ok(true)
        }
        Command::Table { category, max_n } => {
            if max_n == 0 {
                bail!("--max-n must be positive");
            }
            let header: Vec<String> = (1..=max_n).map(|n| n.to_string()).collect();
            println!("m\\n,{}", header.join(","));
            for m in 1..=max_n {
                let row: Vec<String> = (1..=max_n).map(|n| hom_dim_standard(category, m, n).dim().to_string()).collect();
                println!("{m},{}", row.join(","));
            }
            Ok(true)
        }
    }
}
