mod plot;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lineact_core::analysis::{
    conrad_tau, scaling_cocycle, semiconjugacy_search, SemiconjugacyVerdict, StepMeasure,
};
use lineact_core::families::{
    bs_affine, bs_default_surrogate, bs_path, brin_navas_default, check_dyadic_sequence, dyadic_interval,
    dyadic_limit, dyadic_sequence, f2_family, g_omega, h_map, OmegaWord,
};
use lineact_core::lamination::{irreducible_wandering_check, wandering_certificate, IrreducibleVerdict, LeafInterval, WanderingVerdict};
use lineact_core::preorder::PreorderSpec;
use lineact_core::random::random_f2_rep;
use lineact_core::rational::{fmt_rational, int, parse_rational, rat};
use lineact_core::realization::{iota, realize_generators};
use lineact_core::suspension::{
    chart_trace, default_words, recurrence_experiment, rho, thompson_generators_on_j, element_f, CantorPoint,
    SuspensionPoint,
};
use lineact_core::{PlMap, Rational, Representation, Window};
use serde_json::json;

use plot::{parse_window, render, PlotItem, PlotSpec};

const EXIT_INPUT: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(name = "lineact", version, about = "Exact experiments with group actions on the line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Realize a preorder as orbit values and interpolated generators.
    Realize(RealizeArgs),
    /// Write a family fixture as a representation record.
    #[command(subcommand)]
    Family(Family),
    /// Run an analytic procedure on a representation record.
    #[command(subcommand)]
    Analyze(Analyze),
    /// Suspension-flow experiments.
    #[command(subcommand)]
    Suspension(Suspension),
    /// Render a JSON plot spec to SVG.
    Plot(PlotArgs),
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
struct RealizeArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Family {
    F2 {
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        #[arg(long, default_value = "-6,6", allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    Bs {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Path parameter in [0, 1]; omit for the affine action.
        #[arg(long)]
        s: Option<String>,
        #[arg(long, default_value_t = 3)]
        periods: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    BrinNavas {
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    DyadicSeq {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    RandomF2 {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct MeasureArgs {
    #[arg(long)]
    rep: PathBuf,
    #[arg(long)]
    word: String,
    /// Densities interleaved with breakpoints: `d0,b1,d1,...`.
    #[arg(long, default_value = "1")]
    density: String,
    #[arg(long, default_value = "-4,4", allow_hyphen_values = true)]
    window: String,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct IntervalArgs {
    #[arg(long)]
    rep: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    interval: String,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Subcommand)]
enum Analyze {
    Conrad(MeasureArgs),
    Scaling(MeasureArgs),
    Semiconj {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        other: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        basepoints: String,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    Irreducible(IntervalArgs),
    Wandering(IntervalArgs),
}

#[derive(Subcommand)]
enum Suspension {
    Demo {
        #[arg(long, default_value = "-3,3", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 8)]
        max_n: u32,
        #[arg(long, default_value = "(01)")]
        base: String,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Chart trace of the generators `f`, `A`, `B`.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_svg(path: &Option<PathBuf>, spec: &PlotSpec) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, render(spec)).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(())
}

fn read_rep(path: &PathBuf) -> Result<Representation> {
    Ok(Representation::from_record(&read(path)?)?)
}

fn pair(text: &str) -> Result<(Rational, Rational)> {
    let (a, b) = text.split_once(',').ok_or_else(|| anyhow!("expected two values a,b"))?;
    Ok((parse_rational(a.trim())?, parse_rational(b.trim())?))
}

fn parse_measure(text: &str) -> Result<StepMeasure> {
    let vals: Vec<Rational> = text
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<lineact_core::Result<_>>()?;
    if vals.len() % 2 == 0 {
        bail!("density spec needs an odd number of entries");
    }
    let densities = vals.iter().step_by(2).cloned().collect();
    let breakpoints = vals.iter().skip(1).step_by(2).cloned().collect();
    Ok(StepMeasure::new(breakpoints, densities)?)
}

fn graph(label: &str, map: PlMap, shade_sign: bool) -> PlotItem {
    PlotItem::Graph {
        label: label.to_string(),
        map,
        shade_sign,
    }
}

fn cmd_realize(a: &RealizeArgs) -> Result<u8> {
    if a.n == 0 {
        bail!("--n must be at least 1");
    }
    let spec = PreorderSpec::parse(&read(&a.spec)?)?;
    let enumeration = spec.enumeration(a.n)?;
    let table = iota(&spec.preorder, &enumeration, a.n)?;
    emit(&a.output, &table.to_text(&spec.group))?;
    if a.svg.is_some() {
        let action = realize_generators(&table, &enumeration, &spec.group)?;
        let values: Vec<Rational> = table.values().iter().map(|v| v.to_rational()).collect();
        let lo = values.iter().min().expect("nonempty table") - int(1);
        let hi = values.iter().max().expect("nonempty table") + int(1);
        let mut items: Vec<PlotItem> = spec
            .group
            .names()
            .iter()
            .zip(&action.generators)
            .map(|(name, g)| graph(name, g.map.clone(), false))
            .collect();
        items.push(PlotItem::Points {
            label: "iota".into(),
            points: values,
        });
        write_svg(&a.svg, &PlotSpec::new(Window::new(lo, hi)?, items)?)?;
    }
    Ok(0)
}

fn cmd_family(f: &Family) -> Result<u8> {
    match f {
        Family::F2 {
            omega,
            window,
            output,
            svg,
        } => {
            let omega = OmegaWord::parse(omega)?;
            let window = parse_window(window)?;
            let rep = f2_family(&omega, &window)?;
            emit(output, &rep.to_record())?;
            let items = vec![
                graph(&format!("g_{omega}"), g_omega(&omega, &window), true),
                graph("h", h_map(&window), false),
            ];
            write_svg(svg, &PlotSpec::new(window, items)?)?;
        }
        Family::Bs {
            m,
            n,
            s,
            periods,
            output,
        } => {
            if *m == 0 || *n == 0 {
                bail!("m and n must be positive");
            }
            let rep = match s {
                None => bs_affine(*m, *n)?,
                Some(s) => {
                    let s = parse_rational(s)?;
                    let linear = PlMap::affine(rat(*n as i64, *m as i64), Rational::from_integer(0.into()))?;
                    bs_path(*m, *n, &s, &linear, &bs_default_surrogate(*m, *n), *periods)?
                }
            };
            emit(output, &rep.to_record())?;
        }
        Family::BrinNavas { output, svg } => {
            let bn = brin_navas_default();
            emit(output, &bn.rep.to_record())?;
            let outer = Window::new(int(-20), int(20))?;
            let leaves = (0..=4).flat_map(|k| bn.w(k).support_components(&outer)).collect();
            let items = vec![PlotItem::Leaves {
                label: "supp w_k, k = 0..4".into(),
                leaves,
            }];
            write_svg(svg, &PlotSpec::new(outer, items)?)?;
        }
        Family::DyadicSeq { n, output, svg } => {
            let map = dyadic_sequence(*n)?;
            emit(output, &map.to_record())?;
            if let Err(e) = check_dyadic_sequence(*n) {
                eprintln!("property check failed: {e}");
                return Ok(EXIT_INCONSISTENT);
            }
            eprintln!("f_1..f_{n}: all three properties hold");
            let items = vec![graph(&format!("f_{n}"), map, true), graph("f_inf", dyadic_limit(), false)];
            write_svg(svg, &PlotSpec::new(dyadic_interval(), items)?)?;
        }
        Family::RandomF2 { seed, output } => emit(output, &random_f2_rep(*seed).to_record())?,
    }
    Ok(0)
}

fn report(format: Format, text: String, value: serde_json::Value) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
    }
}

fn cmd_analyze(a: &Analyze) -> Result<u8> {
    match a {
        Analyze::Conrad(m) | Analyze::Scaling(m) => {
            let rep = read_rep(&m.rep)?;
            let nu = parse_measure(&m.density)?;
            let window = parse_window(&m.window)?;
            let w = rep.group().parse_word(&m.word)?;
            let (name, value) = if matches!(a, Analyze::Conrad(_)) {
                ("tau", conrad_tau(&rep, &nu, &w, &window)?)
            } else {
                ("kappa", scaling_cocycle(&rep, &nu, &w, &window)?)
            };
            report(
                m.format,
                format!("{name}({}) = {}\n", m.word, fmt_rational(&value)),
                json!({ "word": m.word, name: fmt_rational(&value) }),
            );
            Ok(0)
        }
        Analyze::Semiconj {
            rep,
            other,
            depth,
            basepoints,
            window,
            format,
        } => {
            let r1 = read_rep(rep)?;
            let r2 = read_rep(other)?;
            let (b1, b2) = pair(basepoints)?;
            let window = window.as_deref().map(parse_window).transpose()?;
            let verdict = semiconjugacy_search(&r1, &r2, *depth, window.as_ref(), (&b1, &b2))?;
            match verdict {
                SemiconjugacyVerdict::Pass { depth, table } => {
                    let mut text = format!("PASS depth {depth}, {} tabled pairs\n", table.len());
                    for (p, q) in &table {
                        text.push_str(&format!("{} {}\n", fmt_rational(p), fmt_rational(q)));
                    }
                    let rows: Vec<_> = table.iter().map(|(p, q)| json!([fmt_rational(p), fmt_rational(q)])).collect();
                    report(*format, text, json!({ "verdict": "pass", "depth": depth, "table": rows }));
                }
                SemiconjugacyVerdict::Violation { g, h, depth } => {
                    let (g, h) = (r1.group().format_word(&g), r1.group().format_word(&h));
                    report(
                        *format,
                        format!("VIOLATION depth {depth}: {g} | {h}\n"),
                        json!({ "verdict": "violation", "depth": depth, "g": g, "h": h }),
                    );
                }
            }
            Ok(0)
        }
        Analyze::Irreducible(i) => {
            let rep = read_rep(&i.rep)?;
            let (a, b) = pair(&i.interval)?;
            let verdict = irreducible_wandering_check(&rep, &LeafInterval::new(a, b)?, i.depth)?;
            let g = rep.group();
            let (line, code) = match &verdict {
                IrreducibleVerdict::NotWandering { word, depth } => {
                    (format!("not wandering at depth {depth}: {}", g.format_word(word)), 0)
                }
                IrreducibleVerdict::NoStabilizers { depth } => {
                    (format!("no stabilizers at depth {depth}"), EXIT_INCONCLUSIVE)
                }
                IrreducibleVerdict::CommonFixedPoint { depth, point } => {
                    (format!("stabilizers fix {} at depth {depth}", fmt_rational(point)), 0)
                }
                IrreducibleVerdict::Irreducible { depth, stabilizers } => {
                    let ws: Vec<String> = stabilizers.iter().map(|w| g.format_word(w)).collect();
                    (format!("irreducible at depth {depth}: {}", ws.join(", ")), 0)
                }
            };
            report(i.format, format!("{line}\n"), json!({ "verdict": line }));
            Ok(code)
        }
        Analyze::Wandering(i) => {
            let rep = read_rep(&i.rep)?;
            let (a, b) = pair(&i.interval)?;
            let g = rep.group();
            let line = match wandering_certificate(&rep, &LeafInterval::new(a, b)?, i.depth) {
                WanderingVerdict::Pass { depth, stabilizers } => {
                    let ws: Vec<String> = stabilizers.iter().map(|w| g.format_word(w)).collect();
                    format!("PASS depth {depth}; stabilizers: {}", ws.join(", "))
                }
                WanderingVerdict::Fail { word, depth } => {
                    format!("FAIL depth {depth}: {} overlaps the interval", g.format_word(&word))
                }
            };
            report(i.format, format!("{line}\n"), json!({ "verdict": line }));
            Ok(0)
        }
    }
}

fn cmd_suspension(s: &Suspension) -> Result<u8> {
    let Suspension::Demo {
        window,
        max_n,
        base,
        output,
        svg,
        trace,
        format,
    } = s;
    let window = parse_window(window)?;
    let y = SuspensionPoint::new(CantorPoint::parse(base)?, int(0));
    let words = default_words();
    let r = recurrence_experiment(&y, &words, &window, *max_n)?;
    let names: Vec<&str> = words.iter().map(|(n, _)| n.as_str()).collect();
    let text = {
        let mut t = format!(
            "base {}\nwindow {} {}\nwords {}\nn t distance\n",
            r.base,
            fmt_rational(window.left()),
            fmt_rational(window.right()),
            names.join(" ")
        );
        for row in &r.rows {
            t.push_str(&format!("{} {} {}\n", row.n, fmt_rational(&row.t), fmt_rational(&row.distance)));
        }
        match r.threshold {
            Some(n) => t.push_str(&format!("threshold {n}\n")),
            None => t.push_str("threshold none\n"),
        }
        t.push_str(&format!("verdict {}\n", r.verdict()));
        t
    };
    let body = match format {
        Format::Text => text,
        Format::Json => {
            let rows: Vec<_> = r
                .rows
                .iter()
                .map(|row| json!({ "n": row.n, "t": fmt_rational(&row.t), "distance": fmt_rational(&row.distance) }))
                .collect();
            let v = json!({
                "base": r.base.to_string(),
                "window": [fmt_rational(window.left()), fmt_rational(window.right())],
                "words": names,
                "rows": rows,
                "threshold": r.threshold,
                "verdict": r.verdict(),
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
    };
    emit(output, &body)?;
    if svg.is_some() {
        let items = words
            .iter()
            .map(|(name, g)| Ok(graph(&format!("rho_y({name})"), rho(&y, g, &window)?, false)))
            .collect::<Result<Vec<_>>>()?;
        write_svg(svg, &PlotSpec::new(window.clone(), items)?)?;
    }
    if let Some(p) = trace {
        let (a, b) = thompson_generators_on_j();
        let mut t = String::from("element k base cell_left cell_right map\n");
        for (name, g) in [("f", element_f()), ("A", a), ("B", b)] {
            for row in chart_trace(&y, &g, &window)? {
                t.push_str(&format!("{name} {row}\n"));
            }
        }
        fs::write(p, t).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(if r.threshold.is_some() { 0 } else { EXIT_INCONCLUSIVE })
}

fn cmd_plot(a: &PlotArgs) -> Result<u8> {
    let spec = PlotSpec::parse(&read(&a.spec)?)?;
    emit(&a.output, &render(&spec))?;
    Ok(0)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<lineact_core::Error>() {
        Some(e) if e.is_inconsistency() => EXIT_INCONSISTENT,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Realize(a) => cmd_realize(a),
        Command::Family(f) => cmd_family(f),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Suspension(s) => cmd_suspension(s),
        Command::Plot(p) => cmd_plot(p),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
