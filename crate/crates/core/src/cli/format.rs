//! Text formats: front files, move scripts and event lists.
//!
//! ```text
//! frontcode v1
//! surface closed genus=2
//! event 0: D 1 first R1
//! event 1: C + -
//! event 2: D 1 second R1
//! arc 0: a1
//! ```

use crate::classes::ClassKey;
use crate::error::{Error, Result};
use crate::front::{validate, Event, FrontCode, Sign, Slot, XType};
use crate::group::{Ambient, GroupElem, SurfaceKind, SurfaceSpec};
use crate::moves::{CrossingEvent, MoveOp, MoveSpec, Stratum, TriangleData};

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

/// Whitespace tokens with their 1-based columns.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(b)) => {
                out.push((b + 1, &s[b..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((b + 1, &s[b..]));
    }
    out
}

fn strip_comment(s: &str) -> &str {
    s.split('#').next().unwrap_or("")
}

fn parse_sign(line: usize, col: usize, tok: &str) -> Result<Sign> {
    match tok {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        _ => Err(syntax(line, col, format!("expected `+` or `-`, found `{tok}`"))),
    }
}

fn parse_uint(line: usize, col: usize, tok: &str) -> Result<u64> {
    tok.parse().map_err(|_| syntax(line, col, format!("expected a number, found `{tok}`")))
}

/// `plane`, `sphere`, `torus`, `klein`, `projective`, `closed genus=g`, `free rank=r`.
pub fn parse_surface(line: usize, toks: &[(usize, &str)]) -> Result<SurfaceSpec> {
    let Some(&(col, kind)) = toks.first() else {
        return Err(syntax(line, 1, "missing surface kind"));
    };
    let param = |key: &str| -> Result<u32> {
        let Some(&(c, t)) = toks.get(1) else {
            return Err(syntax(line, col + kind.len() + 1, format!("missing {key}=<n>")));
        };
        let v = t
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| syntax(line, c, format!("expected {key}=<n>")))?;
        Ok(parse_uint(line, c + key.len() + 1, v)? as u32)
    };
    let (spec, used) = match kind {
        "plane" => (Ok(SurfaceSpec::plane()), 1),
        "sphere" => (Ok(SurfaceSpec::sphere()), 1),
        "torus" => (Ok(SurfaceSpec::torus()), 1),
        "klein" => (Ok(SurfaceSpec::klein()), 1),
        "projective" => (Ok(SurfaceSpec::projective()), 1),
        "closed" => (SurfaceSpec::closed(param("genus")?), 2),
        "free" => (SurfaceSpec::free(param("rank")?), 2),
        _ => return Err(syntax(line, col, format!("unknown surface kind `{kind}`"))),
    };
    if let Some(&(c, t)) = toks.get(used) {
        return Err(syntax(line, c, format!("unexpected `{t}`")));
    }
    spec.map_err(|e| syntax(line, col, e.to_string()))
}

fn parse_word(s: SurfaceSpec, line: usize, col: usize, text: &str) -> Result<GroupElem> {
    GroupElem::parse(s, Ambient::Stf, text).map_err(|e| {
        let at = match &e {
            Error::UnknownGenerator(t) => text.find(t.as_str()).map(|i| col + i).unwrap_or(col),
            _ => col,
        };
        syntax(line, at, e.to_string())
    })
}

/// Splits `<keyword> <n>: <rest>` and checks the index.
fn indexed<'a>(line: usize, raw: &'a str, keyword: &str, expect: usize) -> Result<(usize, &'a str)> {
    let body = raw.trim_start();
    let lead = raw.len() - body.len();
    let after = body
        .strip_prefix(keyword)
        .ok_or_else(|| syntax(line, lead + 1, format!("expected `{keyword}`")))?;
    let colon = after
        .find(':')
        .ok_or_else(|| syntax(line, lead + keyword.len() + 1, "expected `<n>:`"))?;
    let num = after[..colon].trim();
    let ncol = lead + keyword.len() + 1 + after[..colon].find(num).unwrap_or(0);
    let n = parse_uint(line, ncol, num)? as usize;
    if n != expect {
        return Err(syntax(line, ncol, format!("expected index {expect}, found {n}")));
    }
    let rest_off = lead + keyword.len() + colon + 1;
    Ok((rest_off, &raw[rest_off..]))
}

pub fn parse_front_file(text: &str) -> Result<FrontCode> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let mut it = lines.into_iter().peekable();
    match it.next() {
        Some((n, l)) if l.trim() == "frontcode v1" => {
            let _ = n;
        }
        Some((n, _)) => return Err(syntax(n, 1, "expected header `frontcode v1`")),
        None => return Err(syntax(1, 1, "empty front file")),
    }
    let surface = match it.next() {
        Some((n, l)) => {
            let toks = tokens(l);
            match toks.first() {
                Some((_, "surface")) => parse_surface(n, &toks[1..])?,
                _ => return Err(syntax(n, 1, "expected `surface <kind>`")),
            }
        }
        None => return Err(syntax(2, 1, "missing surface line")),
    };
    let mut events = Vec::new();
    while let Some(&(n, l)) = it.peek() {
        if !l.trim_start().starts_with("event") {
            break;
        }
        it.next();
        let (off, rest) = indexed(n, l, "event", events.len())?;
        let toks: Vec<(usize, &str)> = tokens(rest).into_iter().map(|(c, t)| (c + off, t)).collect();
        let want = |i: usize| -> Result<(usize, &str)> {
            toks.get(i)
                .copied()
                .ok_or_else(|| syntax(n, l.len() + 1, "line ends early"))
        };
        let (kc, kind) = want(0)?;
        let ev = match kind {
            "D" => {
                let (c1, id) = want(1)?;
                let (c2, slot) = want(2)?;
                let (c3, xt) = want(3)?;
                let id = parse_uint(n, c1, id)? as u32;
                let slot = match slot {
                    "first" => Slot::First,
                    "second" => Slot::Second,
                    _ => return Err(syntax(n, c2, format!("expected `first` or `second`, found `{slot}`"))),
                };
                let xtype = match xt {
                    "R1" => XType::R1,
                    "R2" => XType::R2,
                    "C1" => XType::C1,
                    "C2" => XType::C2,
                    _ => return Err(syntax(n, c3, format!("unknown crossing type `{xt}`"))),
                };
                if let Some(&(c, t)) = toks.get(4) {
                    return Err(syntax(n, c, format!("unexpected `{t}`")));
                }
                Event::DoublePoint { id, slot, xtype }
            }
            "C" => {
                let (c1, m) = want(1)?;
                let (c2, r) = want(2)?;
                if let Some(&(c, t)) = toks.get(3) {
                    return Err(syntax(n, c, format!("unexpected `{t}`")));
                }
                Event::Cusp {
                    maslov: parse_sign(n, c1, m)?,
                    rotation: parse_sign(n, c2, r)?,
                }
            }
            _ => return Err(syntax(n, kc, format!("expected `D` or `C`, found `{kind}`"))),
        };
        events.push(ev);
    }
    let mut arcs = Vec::new();
    for (n, l) in it {
        let (off, rest) = indexed(n, l, "arc", arcs.len())?;
        arcs.push(parse_word(surface, n, off + 1, rest)?);
    }
    let code = FrontCode::new(surface, events, arcs);
    let report = validate(&code);
    if !report.is_valid() {
        let msgs: Vec<String> = report
            .violations
            .iter()
            .map(|(at, v)| match at {
                Some(p) => format!("event {p}: {v}"),
                None => v.to_string(),
            })
            .collect();
        return Err(Error::Semantic(format!("invalid front: {}", msgs.join("; "))));
    }
    Ok(code)
}

pub fn surface_line(s: SurfaceSpec) -> String {
    match s.kind {
        SurfaceKind::OrientableClosed { genus } => format!("surface closed genus={genus}"),
        SurfaceKind::OrientableFree { rank } => format!("surface free rank={rank}"),
        _ => format!("surface {}", s.header()),
    }
}

pub fn serialize_front(code: &FrontCode) -> String {
    let mut out = String::from("frontcode v1\n");
    out.push_str(&surface_line(code.surface));
    out.push('\n');
    for (i, e) in code.events.iter().enumerate() {
        let body = match e {
            Event::DoublePoint { id, slot, xtype } => {
                let slot = match slot {
                    Slot::First => "first",
                    Slot::Second => "second",
                };
                format!("D {id} {slot} {xtype:?}")
            }
            Event::Cusp { maslov, rotation } => format!("C {} {}", maslov.symbol(), rotation.symbol()),
        };
        out.push_str(&format!("event {i}: {body}\n"));
    }
    for (i, a) in code.arcs.iter().enumerate() {
        out.push_str(&format!("arc {i}: {}\n", a.render()));
    }
    out
}

fn parse_stratum(line: usize, col: usize, tok: &str) -> Result<Stratum> {
    match tok {
        "Lambda" => Ok(Stratum::Lambda),
        "K+" => Ok(Stratum::Kplus),
        "K-" => Ok(Stratum::Kminus),
        "T" => Ok(Stratum::T),
        "Pi" => Ok(Stratum::Pi),
        _ => Err(syntax(line, col, format!("unknown stratum `{tok}`"))),
    }
}

/// One move per line:
/// `<stratum> <+|-> site=<i,j,...> [inverse] [rot=<+|->] [op=<create|remove>]
/// [triangle=<bbb>] [witness=[w1 | w2 ...]]`, where `triangle` gives one
/// 0/1 digit per side (1 = the side's orientation matches the cyclic order).
pub fn parse_move_script(surface: SurfaceSpec, text: &str) -> Result<Vec<MoveSpec>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let (head, witness) = match line.find("witness=[") {
            Some(w) => {
                let open = w + "witness=[".len();
                let close = line[open..]
                    .find(']')
                    .map(|c| c + open)
                    .ok_or_else(|| syntax(n, w + 1, "unclosed witness list"))?;
                let mut ws = Vec::new();
                let mut col = open + 1;
                for part in line[open..close].split('|') {
                    ws.push(parse_word(surface, n, col, part)?);
                    col += part.len() + 1;
                }
                if let Some(extra) = line[close + 1..].split_whitespace().next() {
                    let c = close + 2 + line[close + 1..].find(extra).unwrap_or(0);
                    return Err(syntax(n, c, format!("unexpected `{extra}` after witness")));
                }
                (&line[..w], ws)
            }
            None => (line, Vec::new()),
        };
        let toks = tokens(head);
        let (c0, st) = toks[0];
        let stratum = parse_stratum(n, c0, st)?;
        let &(c1, sg) = toks.get(1).ok_or_else(|| syntax(n, head.len() + 1, "missing sign"))?;
        let mut m = MoveSpec::new(stratum, parse_sign(n, c1, sg)?, Vec::new()).witness(witness);
        let mut have_site = false;
        for &(c, t) in &toks[2..] {
            if t == "inverse" {
                m.inverse = true;
            } else if let Some(v) = t.strip_prefix("site=") {
                let mut col = c + 5;
                for x in v.split(',') {
                    m.site.push(parse_uint(n, col, x)? as usize);
                    col += x.len() + 1;
                }
                have_site = true;
            } else if let Some(v) = t.strip_prefix("rot=") {
                m.rotation = parse_sign(n, c + 4, v)?;
            } else if let Some(v) = t.strip_prefix("op=") {
                m.op = Some(match v {
                    "create" => MoveOp::Create,
                    "remove" => MoveOp::Remove,
                    _ => return Err(syntax(n, c + 3, format!("expected `create` or `remove`, found `{v}`"))),
                });
            } else if let Some(v) = t.strip_prefix("triangle=") {
                let bits: Vec<char> = v.chars().collect();
                if bits.len() != 3 || bits.iter().any(|b| *b != '0' && *b != '1') {
                    return Err(syntax(n, c + 9, "triangle needs three 0/1 digits"));
                }
                m.triangle = Some(TriangleData {
                    matches: [bits[0] == '1', bits[1] == '1', bits[2] == '1'],
                });
            } else {
                return Err(syntax(n, c, format!("unexpected `{t}`")));
            }
        }
        if !have_site {
            return Err(syntax(n, 1, "missing site=<indices>"));
        }
        out.push(m);
    }
    Ok(out)
}

pub fn serialize_move(m: &MoveSpec) -> String {
    let site: Vec<String> = m.site.iter().map(|s| s.to_string()).collect();
    let mut s = format!("{} {} site={}", m.stratum.name(), m.direction.symbol(), site.join(","));
    if m.inverse {
        s.push_str(" inverse");
    }
    if m.rotation == Sign::Minus {
        s.push_str(" rot=-");
    }
    match m.op {
        Some(MoveOp::Create) => s.push_str(" op=create"),
        Some(MoveOp::Remove) => s.push_str(" op=remove"),
        None => {}
    }
    if let Some(t) = m.triangle {
        let bits: String = t.matches.iter().map(|&b| if b { '1' } else { '0' }).collect();
        s.push_str(&format!(" triangle={bits}"));
    }
    if !m.witness.is_empty() {
        let ws: Vec<String> = m.witness.iter().map(|w| w.render()).collect();
        s.push_str(&format!(" witness=[{}]", ws.join(" | ")));
    }
    s
}

/// One crossing per line: `<stratum> <+|-> [<class key>]`.
pub fn parse_event_list(surface: SurfaceSpec, text: &str) -> Result<Vec<CrossingEvent>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = strip_comment(raw);
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        let (c0, st) = toks[0];
        let stratum = parse_stratum(n, c0, st)?;
        let &(c1, sg) = toks.get(1).ok_or_else(|| syntax(n, line.len() + 1, "missing sign"))?;
        let sign = parse_sign(n, c1, sg)?;
        let key = match toks.get(2) {
            Some(&(c2, _)) => Some(ClassKey::parse(surface, line[c2 - 1..].trim()).map_err(|e| match e {
                Error::Syntax { .. } => e,
                other => syntax(n, c2, other.to_string()),
            })?),
            None if stratum == Stratum::Lambda => None,
            // K- components carry no class off orientable surfaces
            None if stratum == Stratum::Kminus && !surface.orientable() => None,
            None => return Err(syntax(n, line.len() + 1, "missing class key")),
        };
        out.push(CrossingEvent::new(stratum, sign, key));
    }
    Ok(out)
}

pub fn serialize_event(e: &CrossingEvent) -> String {
    match &e.key {
        Some(k) => format!("{} {} {}", e.stratum.name(), e.sign.symbol(), k.render()),
        None => format!("{} {}", e.stratum.name(), e.sign.symbol()),
    }
}
