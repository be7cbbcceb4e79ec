//! Command-line front end. [`run`] parses arguments, executes one command and
//! returns the report text together with the exit status: 0 on success, 1 on
//! a domain error, 2 on a parse error.

pub mod format;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::classes::{kminus_key, kplus_key, pi_key, t_key};
use crate::error::{Error, Result};
use crate::front::{global_class, indices, loop_pair_at, standard_code, Event, FrontCode, Sign, StandardFrontId};
use crate::group::{Ambient, GroupElem, SurfaceSpec};
use crate::homotopy::{pi1_cstf_descriptor, pi1_front_space, pi_n_front_space, FrontClassData};
use crate::integrator::{
    check_local_integrability, delta_along, integrability_verdict, ComponentInfo, DeltaValue, LocalWitnesses, Verdict,
    WeightFn,
};
use crate::invariants::{half, iplus, planar_base_value, planar_invariant, ModuleVector, PlanarInvariant};
use crate::moves::{apply_move, CrossingEvent, MoveSpec};

use format::{parse_event_list, parse_front_file, parse_move_script, serialize_event, serialize_move};

#[derive(Debug, Parser)]
#[command(name = "frontwave", version, about = "St', J+, J- and I+ of fronts on surfaces")]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for commands taking several front files.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InvArg {
    Stp,
    Jplus,
    Jminus,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SurfaceArg {
    Plane,
    Sphere,
    Torus,
    Klein,
    Projective,
    Closed,
    Free,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check front files.
    Validate { files: Vec<PathBuf> },
    /// Planar St', J+ or J- of a standard front, optionally after a move script.
    Invariants {
        #[arg(long, value_enum, ignore_case = true)]
        inv: InvArg,
        /// `omega,k` of the standard front K_{omega,k}
        #[arg(long)]
        base: String,
        #[arg(long)]
        moves: Option<PathBuf>,
    },
    /// The I+ vector of each front, optionally after a move script.
    Iplus {
        files: Vec<PathBuf>,
        #[arg(long)]
        moves: Option<PathBuf>,
    },
    /// Loop classes and stratum classes at every double point and cusp.
    Classes { files: Vec<PathBuf> },
    /// Sum a weight function along a move script or an event list.
    Integrate {
        front: PathBuf,
        #[arg(long)]
        psi: PathBuf,
        #[arg(long, conflicts_with = "events", required_unless_present = "events")]
        moves: Option<PathBuf>,
        #[arg(long)]
        events: Option<PathBuf>,
        /// Starting value, comma separated; halves written as `n/2`.
        #[arg(long)]
        base: Option<String>,
    },
    /// Local integrability and the verdict for the component of the front.
    CheckIntegrability {
        front: PathBuf,
        #[arg(long)]
        psi: PathBuf,
        /// Crossings of the second Klein bottle loop, as an event list.
        #[arg(long)]
        gamma2: Option<PathBuf>,
    },
    /// Homotopy groups of the space of fronts.
    Homotopy {
        #[arg(long, value_enum, ignore_case = true)]
        surface: SurfaceArg,
        #[arg(long)]
        genus: Option<u32>,
        #[arg(long)]
        rank: Option<u32>,
        #[command(subcommand)]
        which: HomotopyWhich,
    },
}

#[derive(Debug, Subcommand)]
pub enum HomotopyWhich {
    /// pi1 at a front of the given class in pi1(STF).
    Pi1 {
        #[arg(long)]
        class: Option<String>,
    },
    /// pi_n for n >= 2.
    Pin { n: u32 },
    /// pi1 of the cooriented contact bundle.
    Cstf,
}

pub struct Report {
    pub text: String,
    pub json: Value,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::Semantic(_) => 2,
        _ => 1,
    }
}

/// Runs the command line `args` (program name first) and returns the output
/// and the exit status.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.to_string(), code);
        }
    };
    let json = cli.json;
    match execute(&cli) {
        Ok(r) if json => (serde_json::to_string_pretty(&r.json).expect("json") + "\n", 0),
        Ok(r) => (r.text, 0),
        Err(e) if json => {
            let v = json!({ "error": e.to_string(), "exit": exit_code(&e) });
            (serde_json::to_string_pretty(&v).expect("json") + "\n", exit_code(&e))
        }
        Err(e) => (format!("error: {e}\n"), exit_code(&e)),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Semantic(format!("cannot read {}: {e}", path.display())))
}

fn with_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Syntax { line, col, msg } => Error::Syntax {
            line,
            col,
            msg: format!("{}: {msg}", path.display()),
        },
        Error::Semantic(m) => Error::Semantic(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn load_front(path: &Path) -> Result<FrontCode> {
    with_file(path, parse_front_file(&read(path)?))
}

fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Validate { files } => batch(cli.jobs, files, validate_one),
        Command::Iplus { files, moves } => batch(cli.jobs, files, |p| iplus_one(p, moves.as_deref())),
        Command::Classes { files } => batch(cli.jobs, files, classes_one),
        Command::Invariants { inv, base, moves } => invariants_cmd(*inv, base, moves.as_deref()),
        Command::Integrate {
            front,
            psi,
            moves,
            events,
            base,
        } => integrate_cmd(front, psi, moves.as_deref(), events.as_deref(), base.as_deref()),
        Command::CheckIntegrability { front, psi, gamma2 } => check_cmd(front, psi, gamma2.as_deref()),
        Command::Homotopy {
            surface,
            genus,
            rank,
            which,
        } => homotopy_cmd(*surface, *genus, *rank, which),
    }
}

/// Runs `f` on every file, in parallel, keeping the input order.
fn batch<F>(jobs: usize, files: &[PathBuf], f: F) -> Result<Report>
where
    F: Fn(&Path) -> Result<Report> + Sync,
{
    if files.is_empty() {
        return Err(Error::Semantic("no front files given".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Semantic(e.to_string()))?;
    let results: Vec<Result<Report>> = pool.install(|| files.par_iter().map(|p| f(p)).collect());
    if files.len() == 1 {
        return results.into_iter().next().expect("one result");
    }
    let mut text = String::new();
    let mut items = Vec::new();
    for (p, r) in files.iter().zip(results) {
        let r = r?;
        text.push_str(&format!("== {} ==\n{}", p.display(), r.text));
        items.push(json!({ "file": p.display().to_string(), "report": r.json }));
    }
    Ok(Report {
        text,
        json: Value::Array(items),
    })
}

fn validate_one(path: &Path) -> Result<Report> {
    let code = load_front(path)?;
    let (mu, w) = indices(&code);
    let whitney = w.map(|w| w.to_string()).unwrap_or_else(|| "-".into());
    Ok(Report {
        text: format!(
            "valid: {} events, {} double points, {} cusps, class {}, maslov {mu}, whitney {whitney}\n",
            code.events.len(),
            code.double_point_count(),
            code.cusp_count(),
            global_class(&code).render()
        ),
        json: json!({
            "valid": true,
            "events": code.events.len(),
            "double_points": code.double_point_count(),
            "cusps": code.cusp_count(),
            "class": global_class(&code).render(),
            "maslov": mu,
            "whitney": w,
        }),
    })
}

/// Applies a move script, returning the final code and the crossings.
fn run_moves(code: &FrontCode, path: &Path) -> Result<(FrontCode, Vec<CrossingEvent>)> {
    let moves = with_file(path, parse_move_script(code.surface, &read(path)?))?;
    let mut cur = code.clone();
    let mut events = Vec::new();
    for (i, m) in moves.iter().enumerate() {
        let out = apply_move(&cur, m).map_err(|e| step_error(i, m, e))?;
        cur = out.code;
        events.push(out.event);
    }
    Ok((cur, events))
}

fn step_error(i: usize, m: &MoveSpec, e: Error) -> Error {
    let ctx = format!("move {} (`{}`)", i + 1, serialize_move(m));
    match e {
        Error::InconsistentSite(s) => Error::InconsistentSite(format!("{ctx}: {s}")),
        Error::InvalidMove(s) => Error::InvalidMove(format!("{ctx}: {s}")),
        other => other,
    }
}

fn module_json(v: &ModuleVector) -> Value {
    Value::Array(
        v.terms()
            .map(|(k, c)| json!({ "coeff": half(c), "key": k.render() }))
            .collect(),
    )
}

fn iplus_one(path: &Path, moves: Option<&Path>) -> Result<Report> {
    let mut code = load_front(path)?;
    if let Some(m) = moves {
        code = run_moves(&code, m)?.0;
    }
    let v = iplus(&code)?;
    Ok(Report {
        text: if v.is_zero() { "0\n".into() } else { v.render() },
        json: json!({ "iplus": module_json(&v) }),
    })
}

fn classes_one(path: &Path) -> Result<Report> {
    let code = load_front(path)?;
    let (mu, _) = indices(&code);
    let l = global_class(&code);
    let one = code.identity_arc();
    let mut text = format!("class {}\nmaslov {mu}\n", l.render());
    let mut points = Vec::new();
    for id in code.double_point_ids() {
        let (a, b) = loop_pair_at(&code, id)?;
        let kp = kplus_key(&a, &b, Some(mu))?;
        let t = t_key(&a, &b, &one, Some(mu))?;
        let km = if code.surface.orientable() {
            let h = GroupElem::fiber_elem(code.surface, Ambient::Ptf, 1)?;
            Some(kminus_key(&a.to_ptf()?.compose(&h.inverse())?, &b.to_ptf()?.compose(&h)?, Some(mu))?)
        } else {
            None
        };
        text.push_str(&format!("d{id}: loops ({}, {})\n  {}\n", a.render(), b.render(), kp.render()));
        if let Some(k) = &km {
            text.push_str(&format!("  {}\n", k.render()));
        }
        text.push_str(&format!("  {}\n", t.render()));
        points.push(json!({
            "id": id,
            "loops": [a.render(), b.render()],
            "kplus": kp.render(),
            "kminus": km.map(|k| k.render()),
            "t": t.render(),
        }));
    }
    let mut cusps = Vec::new();
    for (p, e) in code.events.iter().enumerate() {
        if let Event::Cusp { rotation, .. } = e {
            let tag = if *rotation == Sign::Plus { 0 } else { 1 };
            let k = pi_key(&l, &one, tag, Some(mu))?;
            text.push_str(&format!("cusp {p}: {}\n", k.render()));
            cusps.push(json!({ "event": p, "pi": k.render() }));
        }
    }
    Ok(Report {
        text,
        json: json!({ "class": l.render(), "maslov": mu, "double_points": points, "cusps": cusps }),
    })
}

fn parse_pair(s: &str) -> Result<(u32, u32)> {
    let bad = || Error::Syntax {
        line: 1,
        col: 1,
        msg: format!("expected `omega,k`, found `{s}`"),
    };
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn invariants_cmd(inv: InvArg, base: &str, moves: Option<&Path>) -> Result<Report> {
    let (omega, k) = parse_pair(base)?;
    let id = StandardFrontId { omega, k };
    let inv = match inv {
        InvArg::Stp => PlanarInvariant::Stp,
        InvArg::Jplus => PlanarInvariant::Jplus,
        InvArg::Jminus => PlanarInvariant::Jminus,
    };
    let events = match moves {
        Some(m) => run_moves(&standard_code(id), m)?.1,
        None => Vec::new(),
    };
    let base_v = planar_base_value(inv, id);
    let v = planar_invariant(inv, id, &events);
    Ok(Report {
        text: format!("{}(K_{{{omega},{k}}}) = {}\n{} after {} crossings = {}\n", inv.name(), half(base_v), inv.name(), events.len(), half(v)),
        json: json!({ "invariant": inv.name(), "omega": omega, "k": k, "base": half(base_v), "crossings": events.len(), "value": half(v) }),
    })
}

fn parse_base(s: &str, dim: usize) -> Result<DeltaValue> {
    let mut doubled = Vec::new();
    for part in s.split(',') {
        let p = part.trim();
        let bad = || Error::Syntax {
            line: 1,
            col: 1,
            msg: format!("`{p}` is not an integer or half-integer"),
        };
        let v = match p.strip_suffix("/2") {
            Some(num) => num.parse::<i64>().map_err(|_| bad())?,
            None => 2 * p.parse::<i64>().map_err(|_| bad())?,
        };
        doubled.push(v);
    }
    if doubled.len() != dim {
        return Err(Error::KeySpaceMismatch(format!(
            "base has {} components, weight function {dim}",
            doubled.len()
        )));
    }
    Ok(DeltaValue { doubled })
}

fn load_psi(path: &Path, s: SurfaceSpec) -> Result<WeightFn> {
    with_file(path, WeightFn::parse(s, &read(path)?))
}

fn integrate_cmd(front: &Path, psi: &Path, moves: Option<&Path>, events: Option<&Path>, base: Option<&str>) -> Result<Report> {
    let code = load_front(front)?;
    let psi = load_psi(psi, code.surface)?;
    let path = match (moves, events) {
        (Some(m), _) => run_moves(&code, m)?.1,
        (None, Some(e)) => with_file(e, parse_event_list(code.surface, &read(e)?))?,
        (None, None) => unreachable!("clap requires one of them"),
    };
    let base = match base {
        Some(b) => parse_base(b, psi.dim())?,
        None => DeltaValue::zero(psi.dim()),
    };
    let mut text = String::new();
    let mut steps = Vec::new();
    let mut acc = base.clone();
    for (i, e) in path.iter().enumerate() {
        let d = delta_along(std::slice::from_ref(e), &psi)?;
        acc = acc.plus(&d);
        text.push_str(&format!("{}: {} -> {d}\n", i + 1, serialize_event(e)));
        steps.push(json!({ "event": serialize_event(e), "delta": d.to_string() }));
    }
    let total = delta_along(&path, &psi)?;
    text.push_str(&format!("delta {total}\nvalue {acc}\n"));
    Ok(Report {
        text,
        json: json!({ "steps": steps, "delta": total.to_string(), "value": acc.to_string() }),
    })
}

fn sample_witnesses(code: &FrontCode, w: &mut LocalWitnesses) -> Result<()> {
    let (mu, _) = indices(code);
    let one = code.identity_arc();
    for id in code.double_point_ids() {
        let (a, b) = loop_pair_at(code, id)?;
        w.k.push(kplus_key(&a, &b, Some(mu))?);
        w.t.push(t_key(&a, &b, &one, Some(mu))?);
    }
    w.k.sort();
    w.k.dedup();
    w.t.sort();
    w.t.dedup();
    Ok(())
}

fn check_cmd(front: &Path, psi: &Path, gamma2: Option<&Path>) -> Result<Report> {
    let code = load_front(front)?;
    let psi = load_psi(psi, code.surface)?;
    let mut w = LocalWitnesses::from_weights(&psi)?;
    sample_witnesses(&code, &mut w)?;
    let local = check_local_integrability(&psi, &w, &code)?;
    let component = ComponentInfo {
        gamma2: match gamma2 {
            Some(p) => Some(with_file(p, parse_event_list(code.surface, &read(p)?))?),
            None => None,
        },
    };
    let verdict = integrability_verdict(code.surface, &component, &psi, &code)?;
    let mut text = format!("local loops checked {}\n", local.checks.len());
    let mut fails = Vec::new();
    for (kind, d) in local.failures() {
        text.push_str(&format!("local failure {} delta {d}\n", kind.name()));
        fails.push(json!({ "loop": kind.name(), "delta": d.to_string() }));
    }
    text.push_str(&format!("local {}\n", if local.passed() { "pass" } else { "fail" }));
    text.push_str(&format!("global {}\n", verdict.render()));
    let global = match &verdict {
        Verdict::Integrable { .. } => "Integrable".to_string(),
        Verdict::NotIntegrable { failing, .. } => format!("NotIntegrable({failing:?})"),
        Verdict::Conditional { .. } => "Conditional(Gamma2 unchecked)".to_string(),
    };
    let mut failing: Vec<&str> = local.failures().map(|(k, _)| k.name()).collect();
    failing.dedup();
    let result = if failing.is_empty() {
        global.clone()
    } else {
        format!("NotIntegrable({})", failing.join(","))
    };
    text.push_str(&format!("result {result}\n"));
    Ok(Report {
        text,
        json: json!({
            "local": { "checked": local.checks.len(), "passed": local.passed(), "failures": fails },
            "global": global,
            "case": format!("{:?}", verdict.case()),
            "detail": verdict.render(),
            "result": result,
        }),
    })
}

fn homotopy_cmd(surface: SurfaceArg, genus: Option<u32>, rank: Option<u32>, which: &HomotopyWhich) -> Result<Report> {
    let need = |v: Option<u32>, name: &str| v.ok_or_else(|| Error::Semantic(format!("--{name} is required for this surface")));
    let s = match surface {
        SurfaceArg::Plane => SurfaceSpec::plane(),
        SurfaceArg::Sphere => SurfaceSpec::sphere(),
        SurfaceArg::Torus => SurfaceSpec::torus(),
        SurfaceArg::Klein => SurfaceSpec::klein(),
        SurfaceArg::Projective => SurfaceSpec::projective(),
        SurfaceArg::Closed => SurfaceSpec::closed(need(genus, "genus")?)?,
        SurfaceArg::Free => SurfaceSpec::free(need(rank, "rank")?)?,
    };
    let d = match which {
        HomotopyWhich::Pi1 { class } => {
            let data = match class {
                Some(c) => FrontClassData::of(GroupElem::parse(s, Ambient::Stf, c).map_err(|e| Error::Syntax {
                    line: 1,
                    col: 1,
                    msg: e.to_string(),
                })?),
                None => FrontClassData::default(),
            };
            pi1_front_space(s, &data)?
        }
        HomotopyWhich::Pin { n } => pi_n_front_space(s, *n)?,
        HomotopyWhich::Cstf => pi1_cstf_descriptor(s)?,
    };
    Ok(Report {
        text: format!("{d}\n"),
        json: json!({ "surface": s.header(), "group": d.render() }),
    })
}
