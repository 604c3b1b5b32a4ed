//! The `ssi` command line.
//!
//! Exit status: 0 when the run is clean, 1 on usage, input or I/O errors,
//! 2 when at least one verdict is a failure.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ssi_core::arcs::{enumerate_arcs, is_shuntable};
use ssi_core::generators::{FamilyKind, GraphFamily};
use ssi_core::harness::{run_corpus, CorpusOptions};
use ssi_core::io::{
    export_dot, parse_edge_list, to_json, write_edge_list, write_ssi_edge_list, AnalysisDocument,
    CorpusDocument, ReportDocument,
};
use ssi_core::theorems::{graph_token, verify_with, TheoremId, VerifyOptions};
use ssi_core::{build_ssi, Graph};

/// Largest host order for which `--s-max auto` runs without `--allow-large`.
pub const AUTO_S_MAX_CAP: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "ssi", version, about = "s-shunt intersection graphs and their theorem checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct A_s(G) and write it as DOT or an edge list.
    Build {
        #[arg(long)]
        input: String,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// List the s-arcs of G, one per line.
    Arcs {
        #[arg(long)]
        input: String,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        shuntable_only: bool,
    },
    /// Structural summary of A_s(G).
    Analyze {
        #[arg(long)]
        input: String,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check the theorem catalogue on one graph.
    Verify {
        #[arg(long)]
        input: String,
        #[arg(long, default_value = "all")]
        theorems: String,
        #[command(flatten)]
        s_max: SMax,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<String>,
    },
    /// Check the theorem catalogue across a graph family.
    Corpus {
        #[command(flatten)]
        family: FamilyArgs,
        /// Sweep the first parameter up to this value.
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value = "all")]
        theorems: String,
        #[command(flatten)]
        s_max: SMax,
        #[arg(long)]
        json: Option<String>,
    },
    /// Write one family member as an edge list.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        /// Member index for multi-graph families.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long)]
    family: String,
    /// Comma-separated integers.
    #[arg(long, default_value = "")]
    params: String,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct SMax {
    /// `auto` (the detour diameter s*) or an integer.
    #[arg(long, default_value = "auto")]
    s_max: String,
    /// Allow `--s-max auto` on hosts with more than 16 vertices.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Dot,
    Edges,
}

/// Runs the CLI on `argv` (program name first).
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(failed) => {
            if failed {
                2
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            1
        }
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn load_graph(path: &str) -> Result<Graph> {
    let text = read_input(path)?;
    parse_edge_list(&text).with_context(|| format!("parsing {path}"))
}

fn emit(target: Option<&str>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match target {
        None | Some("-") => stdout.write_all(text.as_bytes()).context("writing stdout"),
        Some(path) => fs::write(path, text).with_context(|| format!("writing {path}")),
    }
}

fn check_s(s: usize) -> Result<()> {
    if s == 0 {
        bail!("--s must be at least 1");
    }
    Ok(())
}

fn parse_theorems(list: &str) -> Result<Option<Vec<TheoremId>>> {
    if list == "all" {
        return Ok(None);
    }
    list.split(',')
        .map(|t| t.trim().parse::<TheoremId>().map_err(|e| anyhow!(e)))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn parse_params(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("bad parameter `{t}`")))
        .collect()
}

fn family(args: &FamilyArgs, first: Option<usize>) -> Result<GraphFamily> {
    let kind: FamilyKind = args.family.parse()?;
    let mut params = parse_params(&args.params)?;
    if let Some(n) = first {
        params[0] = n;
    }
    let mut f = GraphFamily::new(kind, params)?;
    if let Some(seed) = args.seed {
        f = f.with_seed(seed)?;
    }
    Ok(f)
}

/// `None` means "use s* of each host".
fn s_max(opt: &SMax, largest_n: usize) -> Result<Option<usize>> {
    if opt.s_max == "auto" {
        if largest_n > AUTO_S_MAX_CAP && !opt.allow_large {
            bail!(
                "--s-max auto needs a longest-path search; hosts above {AUTO_S_MAX_CAP} vertices need --allow-large or an explicit --s-max"
            );
        }
        return Ok(None);
    }
    let k: usize = opt
        .s_max
        .parse()
        .with_context(|| format!("--s-max expects `auto` or an integer, got `{}`", opt.s_max))?;
    check_s(k)?;
    Ok(Some(k))
}

fn graph_id(path: &str, g: &Graph) -> String {
    if path == "-" {
        return graph_token(g);
    }
    Path::new(path)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| graph_token(g))
}

/// Returns whether any verdict failed.
fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<bool> {
    match command {
        Command::Build { input, s, out, format } => {
            check_s(s)?;
            let g = load_graph(&input)?;
            let a = build_ssi(&g, s)?;
            let text = match format {
                Format::Dot => export_dot(&a),
                Format::Edges => write_ssi_edge_list(&a),
            };
            emit(out.as_deref(), &text, stdout)?;
            Ok(false)
        }
        Command::Arcs {
            input,
            s,
            shuntable_only,
        } => {
            check_s(s)?;
            let g = load_graph(&input)?;
            let mut text = String::new();
            for a in enumerate_arcs(&g, s)? {
                if !shuntable_only || is_shuntable(&g, &a) {
                    text.push_str(&a.tokens(&g).join(" "));
                    text.push('\n');
                }
            }
            emit(None, &text, stdout)?;
            Ok(false)
        }
        Command::Analyze { input, s, json } => {
            check_s(s)?;
            let g = load_graph(&input)?;
            let doc = AnalysisDocument::new(&build_ssi(&g, s)?);
            let text = if json {
                to_json(&doc)
            } else {
                let girth = doc.girth.map_or("none".to_string(), |x| x.to_string());
                let histogram: Vec<String> = doc.degree_histogram.iter().map(|[d, c]| format!("{d}:{c}")).collect();
                format!(
                    "s {}\norder {}\nsize {}\ngirth {girth}\nconnected {}\ncomponents {}\nregularity {}\ndegrees {}\ndomination {}\n",
                    doc.s,
                    doc.order,
                    doc.size,
                    doc.connected,
                    doc.components,
                    doc.regularity,
                    histogram.join(" "),
                    doc.domination_number
                )
            };
            emit(None, &text, stdout)?;
            Ok(false)
        }
        Command::Verify {
            input,
            theorems,
            s_max: s_opt,
            json,
        } => {
            let g = load_graph(&input)?;
            let opts = VerifyOptions {
                theorems: parse_theorems(&theorems)?,
                s_max: s_max(&s_opt, g.n())?,
                include_inapplicable: true,
            };
            let id = graph_id(&input, &g);
            let reports = verify_with(&g, &id, &opts);
            let doc = ReportDocument::new(&id, &g, &reports);
            let failed = doc.has_failures();
            match json.as_deref() {
                Some(target) => emit(Some(target), &to_json(&doc), stdout)?,
                None => {
                    let mut text = String::new();
                    for r in &doc.runs {
                        let verdict = match r.verdict {
                            Some(v) => format!("{v:?}").to_lowercase(),
                            None => "n/a".to_string(),
                        };
                        let s = r.s.map_or("-".to_string(), |s| s.to_string());
                        text.push_str(&format!("{} s={s} {verdict}\n", r.theorem));
                    }
                    emit(None, &text, stdout)?;
                }
            }
            Ok(failed)
        }
        Command::Corpus {
            family: fam,
            n_max,
            jobs,
            theorems,
            s_max: s_opt,
            json,
        } => {
            let base = family(&fam, None)?;
            let families = match n_max {
                None => vec![base],
                Some(top) => {
                    let start = *base
                        .params
                        .first()
                        .ok_or_else(|| anyhow!("--n-max needs a family with parameters"))?;
                    if top < start {
                        bail!("--n-max {top} is below the first parameter {start}");
                    }
                    (start..=top).map(|n| family(&fam, Some(n))).collect::<Result<Vec<_>>>()?
                }
            };
            let mut largest = 0;
            for f in &families {
                for g in f.generate()? {
                    largest = largest.max(g.n());
                }
            }
            let opts = CorpusOptions {
                verify: VerifyOptions {
                    theorems: parse_theorems(&theorems)?,
                    s_max: s_max(&s_opt, largest)?,
                    include_inapplicable: false,
                },
                jobs,
            };
            let run = run_corpus(&families, &opts)?;
            let doc = CorpusDocument::new(families.iter().map(GraphFamily::id).collect(), &run);
            let failed = doc.summary.failed > 0;
            match json.as_deref() {
                Some(target) => emit(Some(target), &to_json(&doc), stdout)?,
                None => {
                    let mut text = format!(
                        "hosts {} checked {} passed {} failed {}\n",
                        doc.summary.hosts, doc.summary.checked, doc.summary.passed, doc.summary.failed
                    );
                    for (host, r) in run.failures() {
                        let s = r.s.map_or("-".to_string(), |s| s.to_string());
                        text.push_str(&format!("FAIL {} {} s={s}\n", host.id, r.theorem));
                    }
                    emit(None, &text, stdout)?;
                }
            }
            Ok(failed)
        }
        Command::Gen { family: fam, index, out } => {
            let f = family(&fam, None)?;
            let graphs = f.generate()?;
            let count = graphs.len();
            let g = graphs
                .into_iter()
                .nth(index)
                .ok_or_else(|| anyhow!("--index {index} out of range ({count} members)"))?;
            emit(out.as_deref(), &write_edge_list(&g), stdout)?;
            Ok(false)
        }
    }
}
