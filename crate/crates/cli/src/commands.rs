//! Command definitions and their execution. `run` returns the text to print
//! or an error carrying the process exit code.

use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use loctop::kernel::check::{check_derivation, CheckMode};
use loctop::kernel::reals::FormalReals;
use loctop::kernel::{derive_cover, pos_predicate, sublocale_cover, Base, Derivation, Family, SublocaleSpec, Tri};
use loctop::located::sets::ExactSet;
use loctop::located::{distance_to_set, hausdorff, LocatedError};
use loctop::metric_locale::{CompletionBase, FormalBall, RationalLine};
use loctop::numerics::{DedekindReal, Rational};
use loctop::trees::{check_spread_mon, closed_from_open_pos, AlphaReading, SpreadLaw, TreeKind};
use loctop::vietoris::{enumerate_models, normalize, term_leq_finite, term_leq_syntactic, IntervalCarrier};
use num_traits::Signed;
use thiserror::Error;

use crate::plot::{render_plot, PlotSpec, Viewport, DEFAULT_MAX_PIXELS};
use crate::syntax::{self, Carrier, ParseError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{what}: {err}")]
    Parse { what: &'static str, err: ParseError },
    #[error("{0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse { .. } => 2,
            CliError::Precondition(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<LocatedError> for CliError {
    fn from(e: LocatedError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

fn parsed<T>(what: &'static str, r: Result<T, ParseError>) -> Result<T, CliError> {
    r.map_err(|err| CliError::Parse { what, err })
}

#[derive(Debug, Parser)]
#[command(name = "loctop", version, about = "Exact computations with located sets, formal covers and the Vietoris lattice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    Pair,
    ZeroRun,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rasterize a planar set to plain PGM.
    Plot {
        /// Set expression, e.g. `disk:1/2,1/2,1/4`
        #[arg(long)]
        set: String,
        /// xmin,xmax,ymin,ymax
        #[arg(long, allow_hyphen_values = true)]
        viewport: String,
        /// WxH
        #[arg(long)]
        size: String,
        /// Write the image here instead of stdout
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_PIXELS)]
        max_pixels: u64,
    },
    /// Enclose the distance from a point to a set.
    Distance {
        /// Set expression
        #[arg(long)]
        set: String,
        /// x or x,y
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Width bound of the enclosing interval, a positive rational
        #[arg(long)]
        prec: String,
    },
    /// Enclose the Hausdorff distance between two sets.
    Hausdorff {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Width bound of the enclosing interval, a positive rational
        #[arg(long)]
        prec: String,
    },
    /// Search for a derivation of a cover judgment.
    Cover {
        /// `reals` (elements `(p,q)`) or `loc:Q` (elements `B(r; x)`)
        #[arg(long)]
        space: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, allow_hyphen_values = true)]
        family: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// `open:<elems>`, `closed:<elems>` or `posclosed:<set-spec>`
        #[arg(long, allow_hyphen_values = true)]
        sublocale: Option<String>,
    },
    /// Check a derivation with the independent checker.
    Check {
        /// `reals` or `loc:Q`
        #[arg(long)]
        space: String,
        #[arg(long, allow_hyphen_values = true)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        derivation: String,
    },
    /// Decide inequalities, normalize terms and list models.
    Vietoris {
        /// `chain:n`, `bool:n`, `grid:m,n` or `intervals:(a,b)`
        #[arg(long)]
        carrier: String,
        /// Decide whether term S is below term T
        #[arg(long, num_args = 2, value_names = ["S", "T"])]
        leq: Option<Vec<String>>,
        /// Print the tile normal form of a term
        #[arg(long)]
        normalize: Option<String>,
        /// List the points of the carrier's Vietoris locale
        #[arg(long)]
        models: bool,
    },
    /// Check the successor condition of a spread-law.
    Spread {
        /// `full`, `cantor-thirds` or `dead-end:<node>`
        #[arg(long)]
        law: String,
        #[arg(long)]
        depth: usize,
        /// Successors tried per node; 3 for `cantor-thirds`, else 2
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Positivity of a node in a tree with removed subtrees.
    Treepos {
        /// `nodes:<node>;<node>...` or `alpha:<bits>`
        #[arg(long)]
        removed: String,
        #[arg(long, value_enum, default_value_t = ReadingArg::Pair)]
        reading: ReadingArg,
        #[arg(long, default_value = "()")]
        node: String,
        /// Deepest node length explored
        #[arg(long)]
        horizon: usize,
        /// `cantor` or `baire:<branch budget>`
        #[arg(long, default_value = "cantor")]
        tree: String,
    },
}

fn positive_prec(text: &str) -> Result<Rational, CliError> {
    let p = parsed("precision", syntax::parse_rational(text))?;
    if !p.is_positive() {
        return Err(CliError::Precondition("precision must be positive".into()));
    }
    Ok(p)
}

fn enclose(x: &DedekindReal, prec: &Rational) -> Result<String, CliError> {
    x.try_approximate(prec).map(|i| i.to_string()).map_err(|e| CliError::Precondition(e.to_string()))
}

fn require_inhabited(s: &ExactSet) -> Result<(), CliError> {
    if s.is_inhabited() {
        Ok(())
    } else {
        Err(CliError::Precondition(LocatedError::EmptySet.to_string()))
    }
}

pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Plot { set, viewport, size, out, max_pixels } => {
            let set = parsed("set", syntax::parse_set_spec(&set))?;
            let v = parsed("viewport", syntax::parse_family(&viewport.replace(',', " "), &|s, off| {
                syntax::parse_rational(s).map_err(|e| ParseError { offset: e.offset + off, ..e })
            }))?;
            let [xmin, xmax, ymin, ymax]: [Rational; 4] =
                v.try_into().map_err(|_| CliError::Usage("viewport needs xmin,xmax,ymin,ymax".into()))?;
            let (w, h) = size
                .split_once(['x', 'X'])
                .and_then(|(w, h)| Some((w.trim().parse::<u32>().ok()?, h.trim().parse::<u32>().ok()?)))
                .ok_or_else(|| CliError::Usage(format!("size must look like 16x16, got '{size}'")))?;
            let mut spec = PlotSpec::new(set, Viewport { xmin, xmax, ymin, ymax }, w, h);
            spec.max_pixels = max_pixels;
            let pgm = render_plot(&spec).map_err(|e| CliError::Precondition(e.to_string()))?;
            match out {
                Some(path) => {
                    std::fs::write(&path, &pgm).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(pgm),
            }
        }
        Command::Distance { set, point, prec } => {
            let set = parsed("set", syntax::parse_set_spec(&set))?;
            let (p, one_d) = parsed("point", syntax::parse_point(&point))?;
            let prec = positive_prec(&prec)?;
            require_inhabited(&set)?;
            let d = match set.line_nets() {
                Some(nets) if one_d => distance_to_set(&nets, &p.x)?,
                _ => distance_to_set(&set.plane_nets(), &p)?,
            };
            enclose(&d, &prec)
        }
        Command::Hausdorff { a, b, prec } => {
            let a = parsed("a", syntax::parse_set_spec(&a))?;
            let b = parsed("b", syntax::parse_set_spec(&b))?;
            let prec = positive_prec(&prec)?;
            require_inhabited(&a)?;
            require_inhabited(&b)?;
            let d = match (a.line_nets(), b.line_nets()) {
                (Some(x), Some(y)) => hausdorff(&x, &y)?,
                _ => hausdorff(&a.plane_nets(), &b.plane_nets())?,
            };
            enclose(&d, &prec)
        }
        Command::Cover { space, target, family, depth, sublocale } => match space.as_str() {
            "reals" => cover_in(&FormalReals, &syntax::parse_reals_element, &target, &family, depth, sublocale.as_deref(), |u| {
                (u.lo.clone(), u.hi.clone())
            }),
            "loc:Q" => {
                let base = CompletionBase::new(RationalLine, 3);
                cover_in(&base, &syntax::parse_ball_element, &target, &family, depth, sublocale.as_deref(), FormalBall::as_interval)
            }
            other => Err(CliError::Usage(format!("unknown space '{other}' (use reals or loc:Q)"))),
        },
        Command::Check { space, family, derivation } => match space.as_str() {
            "reals" => check_in(&FormalReals, &syntax::parse_reals_element, &family, &derivation),
            "loc:Q" => check_in(&CompletionBase::new(RationalLine, 3), &syntax::parse_ball_element, &family, &derivation),
            other => Err(CliError::Usage(format!("unknown space '{other}' (use reals or loc:Q)"))),
        },
        Command::Vietoris { carrier, leq, normalize: norm, models } => {
            let carrier = parsed("carrier", syntax::parse_carrier(&carrier))?;
            let mut lines = Vec::new();
            match &carrier {
                Carrier::Finite(l) => {
                    if models {
                        for m in enumerate_models(l) {
                            lines.push(m.to_string());
                        }
                    }
                    if let Some(t) = norm {
                        let t = parsed("term", syntax::parse_vterm_finite(&t, l))?;
                        lines.push(normalize(l, &t).to_string());
                    }
                    if let Some(st) = leq {
                        let s = parsed("left term", syntax::parse_vterm_finite(&st[0], l))?;
                        let t = parsed("right term", syntax::parse_vterm_finite(&st[1], l))?;
                        let ans = term_leq_finite(l, &s, &t).map_err(|e| CliError::Precondition(e.to_string()))?;
                        lines.push(ans.to_string());
                    }
                }
                Carrier::Intervals(amb) => {
                    if models {
                        return Err(CliError::Usage("models are listed for finite carriers only".into()));
                    }
                    let l = IntervalCarrier { ambient: amb.clone() };
                    if let Some(t) = norm {
                        let t = parsed("term", syntax::parse_vterm_intervals(&t, amb))?;
                        lines.push(normalize(&l, &t).to_string());
                    }
                    if let Some(st) = leq {
                        let s = parsed("left term", syntax::parse_vterm_intervals(&st[0], amb))?;
                        let t = parsed("right term", syntax::parse_vterm_intervals(&st[1], amb))?;
                        lines.push(tri_word(term_leq_syntactic(&l, &s, &t)).into());
                    }
                }
            }
            if lines.is_empty() {
                return Err(CliError::Usage("nothing to do: pass --leq, --normalize or --models".into()));
            }
            Ok(lines.join("\n") + "\n")
        }
        Command::Spread { law, depth, budget } => {
            let (law, default_budget) = match law.as_str() {
                "full" => (SpreadLaw::full(), 2),
                "cantor-thirds" => (SpreadLaw::cantor_thirds(), 3),
                s => match s.strip_prefix("dead-end:") {
                    Some(node) => {
                        let node = parsed("node", syntax::parse_tree_node(node))?;
                        (SpreadLaw::dead_end(node), 2)
                    }
                    None => return Err(CliError::Usage(format!("unknown law '{s}'"))),
                },
            };
            let report = check_spread_mon(&law, depth, budget.unwrap_or(default_budget));
            let mut out = if report.passed() {
                format!("pass ({} admitted nodes checked)\n", report.admitted_checked)
            } else {
                format!("fail ({} admitted nodes checked)\n", report.admitted_checked)
            };
            for v in &report.violations {
                out.push_str(&format!("violation: {v}\n"));
            }
            Ok(out)
        }
        Command::Treepos { removed, reading, node, horizon, tree } => {
            let reading = match reading {
                ReadingArg::Pair => AlphaReading::Pair,
                ReadingArg::ZeroRun => AlphaReading::ZeroRun,
            };
            let removed = parsed("removal set", syntax::parse_removal_set(&removed, reading))?;
            let node = parsed("node", syntax::parse_tree_node(&node))?;
            let kind = match tree.as_str() {
                "cantor" => TreeKind::Cantor,
                s => match s.strip_prefix("baire:").and_then(|b| b.parse().ok()) {
                    Some(branch_budget) => TreeKind::Baire { branch_budget },
                    None => return Err(CliError::Usage(format!("unknown tree '{s}' (use cantor or baire:<n>)"))),
                },
            };
            Ok(format!("{}\n", closed_from_open_pos(&removed, &node, horizon, kind)))
        }
    }
}

fn tri_word(t: Tri) -> &'static str {
    match t {
        Tri::True => "true",
        Tri::False => "false",
        Tri::Unknown => "unknown",
    }
}

type ElemParser<E> = dyn Fn(&str, usize) -> Result<E, ParseError>;

fn cover_in<B: Base>(
    base: &B,
    elem: &ElemParser<B::Elem>,
    target: &str,
    family: &str,
    depth: usize,
    sublocale: Option<&str>,
    as_interval: fn(&B::Elem) -> (Rational, Rational),
) -> Result<String, CliError> {
    let u = parsed("target", elem(target.trim(), target.len() - target.trim_start().len()))?;
    let fam = parsed("family", syntax::parse_family(family, elem))?;
    let found: Option<Derivation<B::Elem>> = match sublocale {
        None => derive_cover(base, &u, &fam, depth),
        Some(s) => {
            let spec = if let Some(rest) = s.strip_prefix("open:") {
                SublocaleSpec::Open(parsed("sublocale", syntax::parse_family(rest, elem))?)
            } else if let Some(rest) = s.strip_prefix("closed:") {
                SublocaleSpec::Closed(Family::finite(parsed("sublocale", syntax::parse_family(rest, elem))?))
            } else if let Some(rest) = s.strip_prefix("posclosed:") {
                let set = Arc::new(parsed("sublocale", syntax::parse_set_spec(rest))?);
                if !set.is_one_dimensional() {
                    return Err(CliError::Precondition("posclosed needs a set on the line".into()));
                }
                SublocaleSpec::PositivelyClosed(pos_predicate(move |e| {
                    let (p, q) = as_interval(e);
                    set.meets_interval(&p, &q).map_or(Tri::Unknown, Tri::from)
                }))
            } else {
                return Err(CliError::Usage(format!("unknown sublocale '{s}'")));
            };
            sublocale_cover(base, &spec, &u, &fam, depth)
        }
    };
    Ok(match found {
        Some(d) => format!("{d}\n"),
        None => format!("no derivation within depth {depth}\n"),
    })
}

fn check_in<B: Base>(base: &B, elem: &ElemParser<B::Elem>, family: &str, derivation: &str) -> Result<String, CliError> {
    let fam = parsed("family", syntax::parse_family(family, elem))?;
    let d = parsed("derivation", syntax::parse_derivation(derivation, elem))?;
    let target = Family::finite(fam);
    Ok(match check_derivation(base, &d, &target, &CheckMode::Plain) {
        Ok(()) => format!("valid: {} ◁ target\n", d.subject()),
        Err(e) => format!("rejected: {e}\n"),
    })
}
