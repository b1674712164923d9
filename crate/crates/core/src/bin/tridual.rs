use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tridual::decision::{Decision, Verdict};
use tridual::embed::{planarity_test, PlaneEmbedding};
use tridual::error::{Error, Result};
use tridual::export::{embedding_svg, to_dot, triangulation_svg};
use tridual::geometric::{geometric_check, GeometricDual, Model};
use tridual::graph::Graph;
use tridual::known_holes::{
    embed_dual, hole_edge_counts, recognize_known_holes_with, HoleAssignment, KnownHolesOptions,
};
use tridual::no_holes::recognize_no_holes;
use tridual::pipeline::{generate, graph_to_dual, GeneratorConfig};
use tridual::sat::{
    assignment_to_truth, exhaustive_assignment_search, reduce, AbsorberPolicy, Formula,
    GadgetGraph, DEFAULT_CAP,
};
use tridual::triangulation::Triangulation;

#[derive(Parser)]
#[command(name = "tridual", version, about = "Recognize duals of polygon triangulations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether a graph is a triangulation dual.
    Recognize(RecognizeArgs),
    /// Build the gadget graph of a 3-CNF formula.
    Reduce {
        cnf: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = Policy::Fold)]
        policy: Policy,
    },
    /// Search all hole assignments of a graph with degree-2 vertices.
    SolveUnknownHoles {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Dual, hole assignment and representative points of a triangulation.
    Forward {
        tri: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value = "circumcenter")]
        model: String,
    },
    /// Random triangulated polygon.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated `key=value` list over boundary, holes, hole_size
        /// and interior.
        #[arg(long, default_value = "")]
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// SVG of a triangulation, graph, embedding or geometric file.
    Draw {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// DOT of the graph in any supported file.
    ExportDot {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Fold,
    Attach,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("mode").required(true))]
struct RecognizeArgs {
    #[arg(long, group = "mode")]
    no_holes: bool,
    #[arg(long, group = "mode", requires = "assignment")]
    known_holes: bool,
    #[arg(long, group = "mode")]
    geometric: bool,
    #[arg(long)]
    require_empty_interior: bool,
    #[arg(long)]
    assignment: Option<PathBuf>,
    /// Where to write the witness triangulation; defaults to
    /// `<input>.witness.tri`.
    #[arg(long)]
    witness: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    input: PathBuf,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read(p: &Path) -> Result<String> {
    Ok(fs::read_to_string(p)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

enum Loaded {
    Tri(Triangulation),
    Geo(GeometricDual),
    Emb(PlaneEmbedding),
    Graph(Graph),
}

impl Loaded {
    fn graph(&self) -> Result<Graph> {
        Ok(match self {
            Loaded::Tri(t) => graph_to_dual(t)?.gstar.graph().clone(),
            Loaded::Geo(g) => g.gstar.clone(),
            Loaded::Emb(e) => e.graph().clone(),
            Loaded::Graph(g) => g.clone(),
        })
    }
}

/// Recognizes the file kind by trying the formats from most to least
/// specific.
fn load(text: &str) -> Result<Loaded> {
    if text.trim_start().starts_with("points") {
        return Ok(Loaded::Tri(Triangulation::parse(text)?));
    }
    if let Ok(e) = PlaneEmbedding::parse(text) {
        return Ok(Loaded::Emb(e));
    }
    if let Ok(g) = Graph::parse(text) {
        return Ok(Loaded::Graph(g));
    }
    match GeometricDual::parse(text) {
        Ok(g) => Ok(Loaded::Geo(g)),
        // The plain graph error is the most useful one for unknown input.
        Err(_) => Graph::parse(text).map(Loaded::Graph),
    }
}

fn verdict_name(d: &Decision) -> &'static str {
    match d.verdict() {
        Verdict::YesWithoutInteriorPoints => "yes_without_interior_points",
        Verdict::YesWithInteriorPoints => "yes_with_interior_points",
        Verdict::No(_) => "no",
    }
}

fn witness_path(a: &RecognizeArgs) -> PathBuf {
    a.witness.clone().unwrap_or_else(|| {
        let mut s = a.input.clone().into_os_string();
        s.push(".witness.tri");
        PathBuf::from(s)
    })
}

fn report_decision(a: &RecognizeArgs, d: &Decision, report: &mut String) -> Result<()> {
    let _ = writeln!(report, "verdict {}", verdict_name(d));
    match d.reason() {
        Some(r) => {
            let _ = writeln!(report, "reason {r}");
        }
        None => report.push_str("reason none\n"),
    }
    match d.witness() {
        Some(t) => {
            let p = witness_path(a);
            fs::write(&p, t.to_text())?;
            let _ = writeln!(report, "witness {}", p.display());
            let _ = writeln!(report, "interior_points {}", t.interior_points().len());
            if let Some(svg) = &a.svg {
                fs::write(svg, triangulation_svg(t))?;
                let _ = writeln!(report, "svg {}", svg.display());
            }
        }
        None => report.push_str("witness none\n"),
    }
    Ok(())
}

fn recognize(a: &RecognizeArgs) -> Result<()> {
    let text = read(&a.input)?;
    let mut report = String::new();
    if a.no_holes {
        report.push_str("mode no_holes\n");
        let g = load(&text)?.graph()?;
        let d = recognize_no_holes(&g, a.require_empty_interior);
        report_decision(a, &d, &mut report)?;
    } else if a.known_holes {
        report.push_str("mode known_holes\n");
        let emb = match load(&text)? {
            Loaded::Emb(e) => e,
            other => embed_dual(&other.graph()?)?,
        };
        let path = a.assignment.as_ref().expect("clap enforces --assignment");
        let h = HoleAssignment::parse(&read(path)?, &emb)?;
        let d = recognize_known_holes_with(
            &emb,
            &h,
            KnownHolesOptions {
                require_empty_interior: a.require_empty_interior,
            },
        );
        report_decision(a, &d, &mut report)?;
        let counts = hole_edge_counts(&emb, &h);
        let holes: Vec<_> = counts.iter().filter(|(_, &c)| c > 0).collect();
        let _ = writeln!(report, "holes {}", holes.len());
        for (&f, &c) in holes {
            let cyc: Vec<String> = emb.face(f).vertices.iter().map(ToString::to_string).collect();
            let _ = writeln!(report, "hole face {} edges {c}", cyc.join(" "));
        }
    } else {
        report.push_str("mode geometric\n");
        let gd = GeometricDual::parse(&text)?;
        let v = geometric_check(&gd)?;
        let _ = writeln!(report, "status {}", v.status.name());
        if let tridual::geometric::GeometricStatus::RejectTopological(r) = &v.status {
            let _ = writeln!(report, "reason {r}");
        }
        if let Some(s) = &v.solution {
            let _ = writeln!(report, "residual {:e}", s.residual);
            let _ = writeln!(report, "condition {:e}", s.condition);
        }
        for p in &v.problems {
            let _ = writeln!(report, "problem {p}");
        }
        if let Some(t) = &v.candidate {
            let p = witness_path(a);
            fs::write(&p, t.to_text())?;
            let _ = writeln!(report, "candidate {}", p.display());
            if let Some(svg) = &a.svg {
                fs::write(svg, triangulation_svg(t))?;
                let _ = writeln!(report, "svg {}", svg.display());
            }
        }
    }
    print!("{report}");
    Ok(())
}

fn parse_gen_spec(seed: u64, spec: &str) -> Result<GeneratorConfig> {
    let mut cfg = GeneratorConfig {
        seed,
        ..GeneratorConfig::default()
    };
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Precondition(format!("bad spec item `{item}`")))?;
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("bad number in `{item}`")))?;
        match k.trim() {
            "boundary" => cfg.boundary = n,
            "holes" => cfg.holes = n,
            "hole_size" => cfg.hole_size = n,
            "interior" => cfg.interior_points = n,
            other => return Err(Error::Precondition(format!("unknown spec key `{other}`"))),
        }
    }
    Ok(cfg)
}

fn solve(path: &Path, cap: usize) -> Result<()> {
    let text = read(path)?;
    let gg = GadgetGraph::parse(&text).ok();
    let emb = match &gg {
        Some(gg) => gg.gstar.clone(),
        None => match load(&text)? {
            Loaded::Emb(e) => e,
            other => embed_dual(&other.graph()?)?,
        },
    };
    let r = exhaustive_assignment_search(&emb, cap)?;
    let mut out = String::new();
    let _ = writeln!(out, "degree2 {}", r.k);
    let _ = writeln!(out, "recognizer_calls {}", r.recognizer_calls);
    match &r.hit {
        None => out.push_str("result no\n"),
        Some(hit) => {
            out.push_str("result yes\n");
            let _ = writeln!(out, "counter {}", hit.counter);
            out.push_str("assignment\n");
            out.push_str(&hit.assignment.to_text(&emb));
            if let Some(gg) = &gg {
                let truth = assignment_to_truth(gg, &hit.assignment)?;
                out.push_str("truth");
                for (k, t) in truth.iter().enumerate() {
                    let _ = write!(out, " x{}={}", k + 1, u8::from(*t));
                }
                out.push('\n');
            }
        }
    }
    print!("{out}");
    Ok(())
}

fn forward(tri: &Path, output: Option<&Path>, model: &str) -> Result<()> {
    let model = Model::from_name(model).ok_or_else(|| Error::UnsupportedModel(model.to_string()))?;
    let t = Triangulation::parse(&read(tri)?)?;
    let fd = graph_to_dual(&t)?;
    let gd = GeometricDual {
        gstar: fd.gstar.graph().clone(),
        embedding: Some(fd.gstar.clone()),
        coords: fd.centers(&t, model == Model::Centroid),
        model,
        assignment: Some(
            fd.assignment
                .iter()
                .map(|(v, f)| (v, fd.gstar.face(f).vertices.clone()))
                .collect(),
        ),
    };
    let mut text = format!("# interior points {}\n", t.interior_points().len());
    text.push_str(&gd.to_text());
    emit(output, &text)
}

fn draw(input: &Path, output: &Path) -> Result<()> {
    let svg = match load(&read(input)?)? {
        Loaded::Tri(t) => triangulation_svg(&t),
        Loaded::Emb(e) => embedding_svg(&e)?,
        Loaded::Geo(g) => match g.embedding {
            Some(e) => embedding_svg(&e)?,
            None => embedding_svg(&planarity_test(&g.gstar)?)?,
        },
        Loaded::Graph(g) => embedding_svg(&planarity_test(&g)?)?,
    };
    Ok(fs::write(output, svg)?)
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Recognize(a) => recognize(&a),
        Cmd::Reduce {
            cnf,
            output,
            policy,
        } => {
            let f = Formula::parse_dimacs(&read(&cnf)?)?;
            let policy = match policy {
                Policy::Fold => AbsorberPolicy::Fold,
                Policy::Attach => AbsorberPolicy::Attach,
            };
            let gg = reduce(&f, policy)?;
            fs::write(&output, gg.to_text())?;
            println!(
                "gadget graph: {} vertices, {} degree-2, written to {}",
                gg.gstar.vertex_count(),
                gg.k(),
                output.display()
            );
            Ok(())
        }
        Cmd::SolveUnknownHoles { graph, cap } => solve(&graph, cap),
        Cmd::Forward { tri, output, model } => forward(&tri, output.as_deref(), &model),
        Cmd::Gen { seed, spec, output } => {
            let t = generate(&parse_gen_spec(seed, &spec)?)?;
            emit(output.as_deref(), &t.to_text())
        }
        Cmd::Draw { input, output } => draw(&input, &output),
        Cmd::ExportDot { input, output } => {
            let g = load(&read(&input)?)?.graph()?;
            emit(output.as_deref(), &to_dot(&g))
        }
    }
}
