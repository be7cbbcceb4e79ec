//! Golden CLI reports over the fixture corpus. Set `FRONTWAVE_BLESS=1` to
//! rewrite the expected files.
#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use frontwave::cli::format::{parse_event_list, parse_front_file, parse_move_script, serialize_event, serialize_front, serialize_move};
use frontwave::cli::run;
use frontwave::group::SurfaceSpec;
use frontwave::integrator::WeightFn;

pub const FIX: &str = "tests/fixtures";

/// (golden name, arguments after the program name)
pub const CASES: &[(&str, &str)] = &[
    ("validate_all", "--jobs 3 validate tests/fixtures/fronts/genus2_loop.front tests/fixtures/fronts/klein_d2.front tests/fixtures/fronts/klein_gamma2.front tests/fixtures/fronts/klein_reversing.front tests/fixtures/fronts/plane_circle.front tests/fixtures/fronts/plane_fig8.front tests/fixtures/fronts/torus_cusps.front tests/fixtures/fronts/torus_triangle.front tests/fixtures/fronts/torus_two_loops.front"),
    ("validate_json", "--json validate tests/fixtures/fronts/torus_triangle.front"),
    ("classes_torus", "classes tests/fixtures/fronts/torus_two_loops.front"),
    ("classes_klein", "--json classes tests/fixtures/fronts/klein_reversing.front"),
    ("jminus_0_7", "invariants --inv Jminus --base 0,7"),
    ("jplus_moves", "invariants --inv jplus --base 2,1 --moves tests/fixtures/moves/plane_kinks.moves"),
    ("stp_json", "--json invariants --inv stp --base 3,2"),
    ("iplus_fig8", "iplus tests/fixtures/fronts/plane_fig8.front --moves tests/fixtures/moves/plane_kinks.moves"),
    ("iplus_batch", "--jobs 2 --json iplus tests/fixtures/fronts/plane_fig8.front tests/fixtures/fronts/torus_triangle.front tests/fixtures/fronts/torus_two_loops.front"),
    ("iplus_klein", "iplus tests/fixtures/fronts/klein_d2.front"),
    ("integrate_t", "integrate tests/fixtures/fronts/torus_triangle.front --psi tests/fixtures/psi/torus_t.psi --moves tests/fixtures/moves/torus_triangle.moves --base 1/2"),
    ("integrate_kinks", "--json integrate tests/fixtures/fronts/torus_two_loops.front --psi tests/fixtures/psi/torus_t.psi --moves tests/fixtures/moves/torus_kinks.moves"),
    ("check_pilambda", "check-integrability tests/fixtures/fronts/torus_cusps.front --psi tests/fixtures/psi/torus_pilambda_bad.psi"),
    ("check_torus", "check-integrability tests/fixtures/fronts/torus_two_loops.front --psi tests/fixtures/psi/torus_t.psi"),
    ("check_klein_gamma2", "check-integrability tests/fixtures/fronts/klein_gamma2.front --psi tests/fixtures/psi/klein_gamma2.psi --gamma2 tests/fixtures/events/klein_gamma2.events"),
    ("check_klein_conditional", "--json check-integrability tests/fixtures/fronts/klein_gamma2.front --psi tests/fixtures/psi/klein_gamma2.psi"),
    ("homotopy_torus", "homotopy --surface torus pi1"),
    ("homotopy_genus2", "homotopy --surface closed --genus 2 pi1 --class a1"),
    ("homotopy_klein", "--json homotopy --surface klein pi1 --class d^2"),
    ("homotopy_pin", "homotopy --surface sphere pin 3"),
    ("homotopy_cstf", "homotopy --surface plane cstf"),
    ("error_syntax", "validate tests/fixtures/bad/unknown_generator.front"),
    ("error_domain", "iplus tests/fixtures/fronts/klein_d2.front --moves tests/fixtures/moves/torus_kinks.moves"),
];

pub fn render(args: &str) -> String {
    let argv = std::iter::once("frontwave").chain(args.split_whitespace());
    let (out, code) = run(argv);
    format!("exit {code}\n{out}")
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(FIX).join("golden").join(format!("{name}.out"))
}

/// Runs every case twice and compares with the stored report. Returns the
/// mismatching case names.
pub fn golden_mismatches() -> Vec<String> {
    let bless = std::env::var_os("FRONTWAVE_BLESS").is_some();
    let mut bad = Vec::new();
    for (name, args) in CASES {
        let first = render(args);
        let second = render(args);
        if first != second {
            bad.push(format!("{name}: two runs differ"));
            continue;
        }
        let path = golden_path(name);
        if bless {
            fs::write(&path, &first).unwrap();
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(want) if want == first => {}
            Ok(want) => bad.push(format!("{name}: expected\n{want}got\n{first}")),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    bad
}

fn files(dir: &str, ext: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(Path::new(FIX).join(dir))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == ext))
        .collect();
    v.sort();
    v
}

/// Files in the corpus whose parse/serialize round trip is not byte exact.
/// Weight and event files may carry comments, which are compared after
/// stripping.
pub fn round_trip_failures() -> Vec<String> {
    let mut bad = Vec::new();
    for p in files("fronts", "front") {
        let text = fs::read_to_string(&p).unwrap();
        match parse_front_file(&text) {
            Ok(c) if serialize_front(&c) == text => {}
            Ok(c) => bad.push(format!("{}: got\n{}", p.display(), serialize_front(&c))),
            Err(e) => bad.push(format!("{}: {e}", p.display())),
        }
    }
    for p in files("moves", "moves") {
        let text = fs::read_to_string(&p).unwrap();
        match parse_move_script(surface_of(&p), &text) {
            Ok(ms) => {
                let back: String = ms.iter().map(|m| serialize_move(m) + "\n").collect();
                if back != text {
                    bad.push(format!("{}: got\n{back}", p.display()));
                }
            }
            Err(e) => bad.push(format!("{}: {e}", p.display())),
        }
    }
    for p in files("events", "events") {
        let text = strip(&fs::read_to_string(&p).unwrap());
        match parse_event_list(surface_of(&p), &text) {
            Ok(ev) => {
                let back: String = ev.iter().map(|e| serialize_event(e) + "\n").collect();
                if back != text {
                    bad.push(format!("{}: got\n{back}", p.display()));
                }
            }
            Err(e) => bad.push(format!("{}: {e}", p.display())),
        }
    }
    for p in files("psi", "psi") {
        let text = strip(&fs::read_to_string(&p).unwrap());
        match WeightFn::parse(surface_of(&p), &text) {
            Ok(w) if w.render() == text => {}
            Ok(w) => bad.push(format!("{}: got\n{}", p.display(), w.render())),
            Err(e) => bad.push(format!("{}: {e}", p.display())),
        }
    }
    bad
}

/// Corpus files are named `<surface>_...`.
fn surface_of(p: &Path) -> SurfaceSpec {
    let name = p.file_name().unwrap().to_string_lossy();
    match name.split('_').next().unwrap() {
        "plane" => SurfaceSpec::plane(),
        "torus" => SurfaceSpec::torus(),
        "klein" => SurfaceSpec::klein(),
        "genus2" => SurfaceSpec::closed(2).unwrap(),
        other => panic!("no surface for prefix `{other}`"),
    }
}

/// Drops comment lines.
fn strip(text: &str) -> String {
    text.lines().filter(|l| !l.trim_start().starts_with('#')).map(|l| format!("{l}\n")).collect()
}
