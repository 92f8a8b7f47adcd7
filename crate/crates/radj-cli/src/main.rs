use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use radj::adj_oracle::{self, Word1};
use radj::cube::{self, Face, Parity, PastingExpr, Side};
use radj::finpres::{check_sinister, FinCategory, FinTwoCategory, Sinister};
use radj::render;
use radj::squares;
use radj::univprop::{self, FunctorJson, FunctorMap};
use radj::zigzag::{self, GenLetter, GeneratorWord, GeneratorWordJson, StackCell, StackCellJson, WordLayer, Zigzag};
use radj::{fixtures, Verdict};

#[derive(Parser)]
#[command(name = "radj", version, about = "Lax cubes, companion squares and zigzag 2-cells")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Category (or 2-category for `extend --target`) as JSON; defaults to the walking arrow.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = zigzag::DEFAULT_DEPTH)]
    depth: usize,
    #[arg(long = "gen-bound", global = true, default_value_t = 2)]
    gen_bound: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for search and enumeration.
    #[arg(long, global = true)]
    parallel: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Tikz,
}

#[derive(Subcommand)]
enum Cmd {
    /// Faces, parities and boundaries of the lax n-cube.
    #[command(subcommand)]
    Cube(CubeCmd),
    /// Commutative squares and companion checks.
    #[command(subcommand)]
    Squares(SquaresCmd),
    /// Zigzags, 2-cells, normal forms and equality.
    #[command(subcommand)]
    Zigzag(ZigzagCmd),
    /// Walking-adjunction oracle.
    #[command(subcommand)]
    Adj(AdjCmd),
    /// Extend a functor into a sinister 2-category and verify relation samples.
    Extend {
        /// Target 2-category JSON; defaults to the adjoint equivalence.
        #[arg(long)]
        target: Option<PathBuf>,
        /// Functor JSON; defaults to matching names.
        #[arg(long)]
        functor: Option<PathBuf>,
    },
    /// Emit DOT or TikZ for a cell, or the unit/counit figure.
    Render {
        /// Stack cell or generator word JSON.
        #[arg(long)]
        cell: Option<PathBuf>,
        /// Generator word text, e.g. `x: f> ; eta:x fwd:f`.
        #[arg(long)]
        word: Option<String>,
        /// Morphism for the unit/counit figure (used when no cell is given).
        #[arg(long, default_value = "f")]
        morphism: String,
        #[arg(long)]
        no_curves: bool,
    },
}

#[derive(Subcommand)]
enum CubeCmd {
    /// List the faces of the n-cube by dimension.
    Faces {
        #[arg(long)]
        n: usize,
    },
    /// Parity of a facet inside a face.
    Parity {
        #[arg(long)]
        face: Face,
        #[arg(long = "in")]
        within: Face,
    },
    /// Source and target pasting expressions of a face.
    Boundary {
        #[arg(long)]
        face: Face,
    },
    /// Image of a face under the collapse functor.
    Kappa {
        #[arg(long)]
        face: Face,
    },
    /// Check functoriality of the collapse on all generators.
    CheckKappa {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum SquaresCmd {
    /// All commutative squares.
    Enumerate,
    /// Companion identities for every morphism.
    Companions,
    /// Decompose one square (`top,right,left,bottom`) or check all of them.
    Decompose {
        #[arg(long)]
        square: Option<String>,
    },
}

#[derive(Subcommand)]
enum ZigzagCmd {
    /// Reduce a zigzag.
    Reduce {
        /// `x: f> g<`
        #[arg(long)]
        zigzag: String,
    },
    /// Check both snake identities for every morphism.
    Snake {
        /// Include identity morphisms.
        #[arg(long)]
        all: bool,
    },
    /// Normal form of a cell as a word in units, counits and identities.
    Normalize {
        #[arg(long)]
        cell: Option<PathBuf>,
        #[arg(long)]
        word: Option<String>,
    },
    /// Decide equality of two cells (files or inline words).
    Equal {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Classes of cells between two zigzags up to `--gen-bound` generators.
    Enumerate {
        #[arg(long)]
        src: String,
        #[arg(long)]
        tgt: String,
    },
    /// Hom sets of the 1-truncation up to a leg bound.
    Truncate1 {
        #[arg(long, default_value_t = 4)]
        legs: usize,
    },
}

#[derive(Subcommand)]
enum AdjCmd {
    /// Class count for one boundary pair, or golden counts with `--golden`.
    Enumerate {
        #[arg(long, default_value = "x:")]
        src: String,
        #[arg(long, default_value = "x:")]
        tgt: String,
        #[arg(long)]
        golden: bool,
    },
    /// Compare oracle classes with zigzag classes over the walking arrow.
    Compare,
}

/// Exit codes: success, verification failure.
enum Outcome {
    Ok,
    Failed,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn category(g: &Global) -> anyhow::Result<FinCategory> {
    match &g.input {
        None => Ok(fixtures::walking_arrow()),
        Some(p) => Ok(FinCategory::from_json_str(&read(p)?)?),
    }
}

fn emit(g: &Global, text: String, j: Value) {
    if g.format == Format::Json {
        println!("{}", serde_json::to_string_pretty(&j).expect("json values serialize"));
    } else {
        print!("{text}");
    }
}

/// `SOURCE ; tok tok | tok tok` where SOURCE is `x: f> g<` and tokens are `fwd:f`, `eta:f`, ...
fn parse_word(x: &FinCategory, s: &str) -> anyhow::Result<GeneratorWord> {
    let (src, rest) = s.split_once(';').unwrap_or((s, ""));
    let source = Zigzag::parse(x, src.trim())?;
    let mut layers = Vec::new();
    for layer in rest.split('|').map(str::trim).filter(|l| !l.is_empty()) {
        let letters =
            layer.split_whitespace().map(|t| GenLetter::from_token(x, t)).collect::<radj::Result<Vec<_>>>()?;
        layers.push(WordLayer { start: source.start, letters });
    }
    let w = GeneratorWord { source, layers };
    w.check(x)?;
    Ok(w)
}

/// A JSON file holding a stack cell or a generator word, or inline word text.
fn load_cell(x: &FinCategory, arg: &str) -> anyhow::Result<StackCell> {
    let p = Path::new(arg);
    if !p.exists() {
        return Ok(parse_word(x, arg)?.eval(x)?);
    }
    let v: Value = serde_json::from_str(&read(p)?)?;
    if v.get("rows").is_some() {
        let j: StackCellJson = serde_json::from_value(v)?;
        let c = StackCell::from_json(x, &j)?;
        c.check(x)?;
        Ok(c)
    } else {
        let j: GeneratorWordJson = serde_json::from_value(v)?;
        Ok(GeneratorWord::from_json(x, &j)?.eval(x)?)
    }
}

fn cube_cmd(g: &Global, c: &CubeCmd) -> anyhow::Result<Outcome> {
    match c {
        CubeCmd::Faces { n } => {
            let faces = cube::all_faces(*n);
            let text: String = faces.iter().map(|f| format!("{f}\t{}\n", f.dim())).collect();
            let j: Vec<Value> = faces.iter().map(|f| json!({"face": f.to_string(), "dim": f.dim()})).collect();
            emit(g, text, json!(j));
        }
        CubeCmd::Parity { face, within } => {
            let p = cube::parity(face, within)?;
            emit(g, format!("{p}\n"), json!(p));
        }
        CubeCmd::Boundary { face } => {
            let s = cube::boundary_face(face, Side::Source)?;
            let t = cube::boundary_face(face, Side::Target)?;
            let facets = |p: Parity| cube::facets(face, p).iter().map(|f| f.to_string()).collect::<Vec<_>>();
            let text = format!("source: {}\ntarget: {}\n", s.to_sexpr(), t.to_sexpr());
            let j = json!({
                "face": face.to_string(),
                "source": s.to_sexpr(),
                "target": t.to_sexpr(),
                "even": facets(Parity::Even),
                "odd": facets(Parity::Odd),
                "globular": cube::globular(&PastingExpr::face(face.clone()))?,
            });
            emit(g, text, j);
        }
        CubeCmd::Kappa { face } => {
            let k = cube::kappa(face);
            emit(g, format!("{k}\n"), json!({"face": face.to_string(), "image": k.to_string(), "cell": k}));
        }
        CubeCmd::CheckKappa { n } => {
            let r = cube::check_kappa_functorial(*n)?;
            let text = format!(
                "n = {}: {} generators, {} checks, {} mismatches\n",
                r.n,
                r.generators,
                r.checked,
                r.mismatches.len()
            );
            let ok = r.passed();
            emit(g, text, serde_json::to_value(&r)?);
            return Ok(if ok { Outcome::Ok } else { Outcome::Failed });
        }
    }
    Ok(Outcome::Ok)
}

fn squares_cmd(g: &Global, c: &SquaresCmd) -> anyhow::Result<Outcome> {
    let x = category(g)?;
    match c {
        SquaresCmd::Enumerate => {
            let all = squares::enumerate_squares(&x);
            let mut text: String = all.iter().map(|s| format!("{}\n", s.display(&x))).collect();
            text.push_str(&format!("{} squares\n", all.len()));
            let j: Vec<_> = all.iter().map(|s| s.to_json(&x)).collect();
            emit(g, text, json!({"count": all.len(), "squares": j}));
            Ok(Outcome::Ok)
        }
        SquaresCmd::Companions => {
            let rows: Vec<(String, bool)> =
                x.morphisms().map(|f| (x.mor_name(f).to_string(), squares::companion_check(&x, f))).collect();
            let text: String =
                rows.iter().map(|(n, ok)| format!("{n}: {}\n", if *ok { "OK" } else { "FAIL" })).collect();
            let ok = rows.iter().all(|r| r.1);
            emit(g, text, json!(rows.iter().map(|(n, ok)| json!({"morphism": n, "ok": ok})).collect::<Vec<_>>()));
            Ok(if ok { Outcome::Ok } else { Outcome::Failed })
        }
        SquaresCmd::Decompose { square: Some(text) } => {
            let parts: Vec<&str> = text.split(',').map(str::trim).collect();
            let [t, r, l, b] = parts[..] else { bail!("--square wants top,right,left,bottom") };
            let s = squares::make_square(&x, x.mor(t)?, x.mor(r)?, x.mor(l)?, x.mor(b)?)?;
            let d = squares::decompose(&x, &s);
            let back = d.repaste(&x)?;
            let text = format!(
                "upper left:  {}\nupper right: {}\nlower left:  {}\nlower right: {}\nrepasted:    {}\n",
                d.upper_left.display(&x),
                d.upper_right.display(&x),
                d.lower_left.display(&x),
                d.lower_right.display(&x),
                back.display(&x)
            );
            let j = json!({
                "upper_left": d.upper_left.to_json(&x),
                "upper_right": d.upper_right.to_json(&x),
                "lower_left": d.lower_left.to_json(&x),
                "lower_right": d.lower_right.to_json(&x),
                "repasted": back.to_json(&x),
            });
            emit(g, text, j);
            Ok(if back == s { Outcome::Ok } else { Outcome::Failed })
        }
        SquaresCmd::Decompose { square: None } => {
            let all = squares::enumerate_squares(&x);
            let bad = all.iter().filter(|s| squares::decompose(&x, s).repaste(&x).ok() != Some(**s)).count();
            emit(
                g,
                format!("{} squares, {bad} failed to repaste\n", all.len()),
                json!({"squares": all.len(), "failed": bad}),
            );
            Ok(if bad == 0 { Outcome::Ok } else { Outcome::Failed })
        }
    }
}

fn zigzag_cmd(g: &Global, c: &ZigzagCmd) -> anyhow::Result<Outcome> {
    let x = category(g)?;
    match c {
        ZigzagCmd::Reduce { zigzag } => {
            let z = Zigzag::parse(&x, zigzag)?;
            emit(g, format!("{}\n", z.display(&x)), serde_json::to_value(z.to_json(&x))?);
            Ok(Outcome::Ok)
        }
        ZigzagCmd::Snake { all } => {
            let mors: Vec<_> = x.morphisms().filter(|&f| *all || !x.is_identity(f)).collect();
            let reports: Vec<_> = mors.iter().map(|&f| zigzag::snake_check(&x, f, g.depth)).collect();
            let mut text = String::new();
            for r in &reports {
                if r.ok() {
                    text.push_str(&format!("{}: OK (both snakes Equal at depth {})\n", r.morphism, g.depth));
                } else {
                    text.push_str(&format!(
                        "{}: FAIL (left {}, right {})\n",
                        r.morphism, r.left.verdict, r.right.verdict
                    ));
                }
            }
            let ok = reports.iter().all(|r| r.ok());
            emit(g, text, serde_json::to_value(&reports)?);
            Ok(if ok { Outcome::Ok } else { Outcome::Failed })
        }
        ZigzagCmd::Normalize { cell, word } => {
            let c = match (cell, word) {
                (Some(p), _) => load_cell(&x, &p.to_string_lossy())?,
                (None, Some(w)) => parse_word(&x, w)?.eval(&x)?,
                (None, None) => bail!("normalize needs --cell or --word"),
            };
            let n = zigzag::normalize(&x, &c);
            let v = zigzag::equal(&x, &c, &n.eval(&x)?, g.depth).verdict;
            emit(g, format!("{}\nsound: {v}\n", n.display(&x)), json!({"word": n.to_json(&x), "sound": v}));
            Ok(if v == Verdict::Equal { Outcome::Ok } else { Outcome::Failed })
        }
        ZigzagCmd::Equal { lhs, rhs } => {
            let (a, b) = (load_cell(&x, lhs)?, load_cell(&x, rhs)?);
            let r = zigzag::equal(&x, &a, &b, g.depth);
            emit(g, format!("{}\n", r.verdict), serde_json::to_value(r)?);
            Ok(Outcome::Ok)
        }
        ZigzagCmd::Enumerate { src, tgt } => {
            let (s, t) = (Zigzag::parse(&x, src)?, Zigzag::parse(&x, tgt)?);
            let en = zigzag::enumerate_cells(&x, &s, &t, g.gen_bound, g.depth);
            let sums = en.summaries(&x);
            let mut text =
                format!("{} words, {} classes, {} unknown pairs\n", en.words.len(), en.class_count(), en.unknown_pairs);
            for c in &sums {
                text.push_str(&format!("  [{}] {}\n", c.size, c.representative));
            }
            let j = json!({"words": en.words.len(), "classes": sums, "unknown_pairs": en.unknown_pairs, "distinct_pairs": en.distinct_pairs});
            emit(g, text, j);
            Ok(Outcome::Ok)
        }
        ZigzagCmd::Truncate1 { legs } => {
            let t = zigzag::truncate1(&x, *legs);
            let mut text = String::new();
            let mut j = Vec::new();
            for ((a, b), zs) in &t.homs {
                text.push_str(&format!("{} -> {}: {}\n", x.obj_name(*a), x.obj_name(*b), zs.len()));
                j.push(json!({"src": x.obj_name(*a), "tgt": x.obj_name(*b), "zigzags": zs.iter().map(|z| z.display(&x)).collect::<Vec<_>>()}));
            }
            emit(g, text, json!({"leg_bound": legs, "homs": j}));
            Ok(Outcome::Ok)
        }
    }
}

fn adj_cmd(g: &Global, c: &AdjCmd) -> anyhow::Result<Outcome> {
    match c {
        AdjCmd::Enumerate { golden: true, .. } => {
            let all: Vec<_> = (0..=g.gen_bound)
                .flat_map(|b| adj_oracle::golden_counts(b, zigzag::ORACLE_DEPTH.max(g.depth)))
                .collect();
            let text: String = all
                .iter()
                .map(|e| {
                    format!("{} => {} @{}: {} classes of {} words\n", e.src, e.tgt, e.gen_bound, e.classes, e.words)
                })
                .collect();
            emit(g, text, serde_json::to_value(&all)?);
            Ok(Outcome::Ok)
        }
        AdjCmd::Enumerate { src, tgt, .. } => {
            let (s, t): (Word1, Word1) = (src.parse()?, tgt.parse()?);
            let en = adj_oracle::enumerate_adj(&s, &t, g.gen_bound, g.depth);
            let mut text =
                format!("{} words, {} classes, {} unknown pairs\n", en.words.len(), en.class_count(), en.unknown_pairs);
            for c in &en.classes {
                text.push_str(&format!("  [{}] {}\n", c.len(), en.words[c[0]].display()));
            }
            let reps: Vec<_> = en
                .classes
                .iter()
                .map(|c| json!({"representative": en.words[c[0]].display(), "size": c.len()}))
                .collect();
            emit(g, text, json!({"words": en.words.len(), "classes": reps, "unknown_pairs": en.unknown_pairs}));
            Ok(Outcome::Ok)
        }
        AdjCmd::Compare => {
            let depth = g.depth.max(zigzag::ORACLE_DEPTH);
            let r = adj_oracle::compare_with_zigzag(g.gen_bound, depth);
            let mut text = format!("{}\n", r.summary());
            for p in r.pairs.iter().filter(|p| p.status != adj_oracle::PairStatus::Agree) {
                text.push_str(&format!(
                    "  {} => {}: adj {} vs zigzag {} ({:?})\n",
                    p.src, p.tgt, p.adj_classes, p.zigzag_classes, p.status
                ));
            }
            let ok = r.ok();
            emit(g, text, serde_json::to_value(&r)?);
            Ok(if ok { Outcome::Ok } else { Outcome::Failed })
        }
    }
}

fn extend_cmd(g: &Global, target: &Option<PathBuf>, functor: &Option<PathBuf>) -> anyhow::Result<Outcome> {
    let x = category(g)?;
    let d = match target {
        None => fixtures::adjoint_equivalence(),
        Some(p) => FinTwoCategory::from_json_str(&read(p)?)?,
    };
    let f = match functor {
        None => FunctorMap::by_name(&x, &d.underlying)?,
        Some(p) => {
            let j: FunctorJson = serde_json::from_str(&read(p)?)?;
            FunctorMap::from_json(&x, &d.underlying, &j)?
        }
    };
    let table = match check_sinister(&d) {
        Sinister::Table(t) => t,
        Sinister::Failure(m) => {
            return Err(radj::Error::MissingAdjunctionData(d.underlying.mor_name(m).to_string()).into())
        }
    };
    let ext = univprop::extend(&x, &d, &f, &table)?;
    let samples = univprop::relation_samples(&x, g.seed);
    let r = univprop::verify_extension(&x, &d, &ext, &samples);
    let images = ext.generator_images(&x, &d);
    let mut text: String = images.iter().map(|i| format!("{} ↦ {}\n", i.generator, i.image)).collect();
    text.push_str(&format!(
        "{} samples: {} passed, {} failed; restriction {}\n",
        r.samples.len(),
        r.passed,
        r.failed,
        if r.restriction_ok { "OK" } else { "FAIL" }
    ));
    for s in r.samples.iter().filter(|s| !s.pass) {
        text.push_str(&format!("  FAIL {:?} {}\n", s.kind, s.label));
    }
    let ok = r.ok();
    emit(g, text, json!({"generators": images, "report": r}));
    Ok(if ok { Outcome::Ok } else { Outcome::Failed })
}

fn render_cmd(
    g: &Global,
    cell: &Option<PathBuf>,
    word: &Option<String>,
    morphism: &str,
    no_curves: bool,
) -> anyhow::Result<Outcome> {
    let x = category(g)?;
    let panels = match (cell, word) {
        (Some(p), _) => vec![render::cell_panel(&load_cell(&x, &p.to_string_lossy())?)],
        (None, Some(w)) => vec![render::cell_panel(&parse_word(&x, w)?.eval(&x)?)],
        (None, None) => render::unit_counit_panels(&x, x.mor(morphism)?),
    };
    let format = match g.format {
        Format::Tikz => render::Format::Tikz,
        Format::Dot | Format::Text => render::Format::Dot,
        Format::Json => bail!("render emits dot or tikz"),
    };
    print!("{}", render::render(&x, &panels, format, !no_curves));
    Ok(Outcome::Ok)
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    if let Some(n) = cli.global.parallel {
        if n == 0 {
            return Err(anyhow!("--parallel wants at least one worker"));
        }
        #[cfg(feature = "parallel")]
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let g = &cli.global;
    match &cli.cmd {
        Cmd::Cube(c) => cube_cmd(g, c),
        Cmd::Squares(c) => squares_cmd(g, c),
        Cmd::Zigzag(c) => zigzag_cmd(g, c),
        Cmd::Adj(c) => adj_cmd(g, c),
        Cmd::Extend { target, functor } => extend_cmd(g, target, functor),
        Cmd::Render { cell, word, morphism, no_curves } => render_cmd(g, cell, word, morphism, *no_curves),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
