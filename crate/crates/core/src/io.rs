//! CSV formats for instances and schedule traces.
//!
//! Flow format, one row per nonzero flow:
//!
//! ```text
//! # m=2 label=demo
//! coflow_id,release,weight,input,output,size
//! 1,0,1,1,1,5
//! ```
//!
//! Compact format, one row per coflow with `i:j:size` triples:
//!
//! ```text
//! coflow_id,release,weight,m,flows
//! 1,0,1,2,1:1:5;2:2:3
//! ```
//!
//! Ports and coflow ids are 1-based in both formats. The optional leading
//! comment fixes `m` and the label for the flow format; otherwise `m` is the
//! largest port seen. Traces are `slot,input,output,coflow` with 0-based slots.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::FormatError;
use crate::model::{CoflowMatrix, Instance, Rational};
use crate::schedule::{ScheduleTrace, Transfer};

pub const FLOW_HEADER: &str = "coflow_id,release,weight,input,output,size";
pub const COMPACT_HEADER: &str = "coflow_id,release,weight,m,flows";
pub const TRACE_HEADER: &str = "slot,input,output,coflow";

fn parse_err(line: u64, msg: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses `7`, `1.25` or `3/4`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().ok()?;
        let q: i128 = q.trim().parse().ok()?;
        return (q != 0).then(|| Rational::new(p, q));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 30 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let negative = int.starts_with('-');
    let int_val: i128 = if int.is_empty() || int == "-" { 0 } else { int.parse().ok()? };
    let scale = 10i128.checked_pow(frac.len() as u32)?;
    let frac_val: i128 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    let mag = int_val.abs().checked_mul(scale)?.checked_add(frac_val)?;
    Some(Rational::new(if negative { -mag } else { mag }, scale))
}

/// Decimal when the value has a terminating expansion, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let mut q = *r.denom();
    let mut digits = 0u32;
    for f in [2i128, 5] {
        while q % f == 0 {
            q /= f;
        }
    }
    if q != 1 {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let mut scaled = *r;
    while !scaled.is_integer() {
        scaled *= Rational::from_integer(10);
        digits += 1;
    }
    let v = scaled.to_integer();
    let sign = if v < 0 { "-" } else { "" };
    let v = v.abs();
    let div = 10i128.pow(digits);
    format!("{sign}{}.{:0width$}", v / div, v % div, width = digits as usize)
}

struct Header {
    m: Option<usize>,
    label: Option<String>,
}

fn read_header_comment(text: &str) -> Header {
    let mut h = Header { m: None, label: None };
    if let Some(first) = text.lines().next() {
        if let Some(rest) = first.trim().strip_prefix('#') {
            let rest = rest.trim();
            let (head, label) = match rest.find("label=") {
                Some(pos) => (&rest[..pos], Some(rest[pos + 6..].trim().to_string())),
                None => (rest, None),
            };
            for tok in head.split_whitespace() {
                if let Some(v) = tok.strip_prefix("m=") {
                    h.m = v.parse().ok();
                }
            }
            h.label = label;
        }
    }
    h
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, idx: usize, name: &str) -> Result<T, FormatError> {
    let line = rec.position().map_or(0, |p| p.line());
    rec.get(idx)
        .ok_or_else(|| parse_err(line, format!("missing {name}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("bad {name} '{}'", &rec[idx])))
}

struct Pending {
    release: u64,
    weight: Rational,
    flows: Vec<(usize, usize, u64)>,
}

fn assemble(
    coflows: BTreeMap<usize, Pending>,
    m: usize,
    label: String,
) -> Result<Instance, FormatError> {
    let mut out = Vec::with_capacity(coflows.len());
    for (id, p) in coflows {
        let mut demand = vec![0u64; m * m];
        for (i, j, size) in p.flows {
            if i == 0 || j == 0 || i > m || j > m {
                return Err(parse_err(0, format!("coflow {id}: port ({i},{j}) outside 1..={m}")));
            }
            demand[(i - 1) * m + (j - 1)] += size;
        }
        out.push(CoflowMatrix::new(id, m, demand, p.weight, p.release)?);
    }
    Ok(Instance::new(m, out, label)?)
}

fn entry<'a>(
    map: &'a mut BTreeMap<usize, Pending>,
    id: usize,
    release: u64,
    weight: Rational,
    line: u64,
) -> Result<&'a mut Pending, FormatError> {
    let p = map.entry(id).or_insert(Pending {
        release,
        weight,
        flows: Vec::new(),
    });
    if p.release != release || p.weight != weight {
        return Err(parse_err(line, format!("coflow {id}: release/weight differ between rows")));
    }
    Ok(p)
}

fn weight_field(rec: &csv::StringRecord, idx: usize) -> Result<Rational, FormatError> {
    let line = rec.position().map_or(0, |p| p.line());
    rec.get(idx)
        .and_then(parse_rational)
        .ok_or_else(|| parse_err(line, "bad weight"))
}

pub fn parse_flow_csv(text: &str) -> Result<Instance, FormatError> {
    let header = read_header_comment(text);
    let mut rdr = reader(text);
    let mut coflows = BTreeMap::new();
    let mut seen = HashSet::new();
    let mut max_port = 0;
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let id: usize = field(&rec, 0, "coflow_id")?;
        let release: u64 = field(&rec, 1, "release")?;
        let weight = weight_field(&rec, 2)?;
        let input: usize = field(&rec, 3, "input")?;
        let output: usize = field(&rec, 4, "output")?;
        let size: u64 = field(&rec, 5, "size")?;
        if !seen.insert((id, input, output)) {
            return Err(FormatError::DuplicateFlow {
                coflow: id,
                input,
                output,
            });
        }
        max_port = max_port.max(input).max(output);
        entry(&mut coflows, id, release, weight, line)?.flows.push((input, output, size));
    }
    let m = header.m.unwrap_or(max_port);
    assemble(coflows, m, header.label.unwrap_or_default())
}

pub fn parse_compact_csv(text: &str) -> Result<Instance, FormatError> {
    let header = read_header_comment(text);
    let mut rdr = reader(text);
    let mut coflows = BTreeMap::new();
    let mut m_seen: Option<usize> = header.m;
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let id: usize = field(&rec, 0, "coflow_id")?;
        let release: u64 = field(&rec, 1, "release")?;
        let weight = weight_field(&rec, 2)?;
        let m: usize = field(&rec, 3, "m")?;
        if *m_seen.get_or_insert(m) != m {
            return Err(parse_err(line, format!("coflow {id}: m={m} differs from other rows")));
        }
        if coflows.contains_key(&id) {
            return Err(parse_err(line, format!("coflow {id} listed twice")));
        }
        let p = entry(&mut coflows, id, release, weight, line)?;
        let mut seen = HashSet::new();
        for triple in rec.get(4).unwrap_or("").split(';').filter(|t| !t.trim().is_empty()) {
            let parts: Vec<&str> = triple.split(':').map(str::trim).collect();
            let [i, j, s] = parts[..] else {
                return Err(parse_err(line, format!("bad flow '{triple}'")));
            };
            let bad = || parse_err(line, format!("bad flow '{triple}'"));
            let (i, j, s): (usize, usize, u64) = (
                i.parse().map_err(|_| bad())?,
                j.parse().map_err(|_| bad())?,
                s.parse().map_err(|_| bad())?,
            );
            if !seen.insert((i, j)) {
                return Err(FormatError::DuplicateFlow {
                    coflow: id,
                    input: i,
                    output: j,
                });
            }
            p.flows.push((i, j, s));
        }
    }
    let m = m_seen.ok_or_else(|| parse_err(0, "no coflows"))?;
    assemble(coflows, m, header.label.unwrap_or_default())
}

/// Picks the parser from the header row.
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols.len() == 5 && cols[3] == "m" {
        parse_compact_csv(text)
    } else {
        parse_flow_csv(text)
    }
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance, FormatError> {
    parse_instance(&std::fs::read_to_string(path)?)
}

fn comment_line(instance: &Instance) -> String {
    format!("# m={} label={}\n", instance.ports(), instance.label().replace('\n', " "))
}

pub fn write_flow_csv(instance: &Instance) -> String {
    let mut out = comment_line(instance);
    out.push_str(FLOW_HEADER);
    out.push('\n');
    for c in instance.coflows() {
        let w = format_rational(&c.weight());
        for (i, j, v) in c.flows() {
            let _ = writeln!(out, "{},{},{},{},{},{}", c.id(), c.release(), w, i + 1, j + 1, v);
        }
    }
    out
}

pub fn write_compact_csv(instance: &Instance) -> String {
    let mut out = comment_line(instance);
    out.push_str(COMPACT_HEADER);
    out.push('\n');
    for c in instance.coflows() {
        let flows: Vec<String> = c.flows().map(|(i, j, v)| format!("{}:{}:{}", i + 1, j + 1, v)).collect();
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            c.id(),
            c.release(),
            format_rational(&c.weight()),
            c.ports(),
            flows.join(";")
        );
    }
    out
}

/// One row per served data unit, sorted by slot.
pub fn write_trace_csv(trace: &ScheduleTrace) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for (slot, i, j, k) in trace.unit_rows() {
        let _ = writeln!(out, "{slot},{},{},{}", i + 1, j + 1, k + 1);
    }
    out
}

pub fn parse_trace_csv(text: &str) -> Result<ScheduleTrace, FormatError> {
    let mut rdr = reader(text);
    let mut trace = ScheduleTrace::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let slot: u64 = field(&rec, 0, "slot")?;
        let input: usize = field(&rec, 1, "input")?;
        let output: usize = field(&rec, 2, "output")?;
        let coflow: usize = field(&rec, 3, "coflow")?;
        if input == 0 || output == 0 || coflow == 0 {
            return Err(parse_err(line, "ports and coflow ids are 1-based"));
        }
        trace.push(Transfer {
            start: slot,
            len: 1,
            input: input - 1,
            output: output - 1,
            coflow: coflow - 1,
        });
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo() -> Instance {
        let c1 = CoflowMatrix::from_rows(1, &[vec![5, 0, 1], vec![0, 0, 0], vec![2, 0, 0]])
            .unwrap()
            .with_weight(Rational::new(3, 2))
            .unwrap();
        let c2 = CoflowMatrix::from_rows(2, &[vec![0, 0, 0], vec![0, 7, 0], vec![0, 0, 0]])
            .unwrap()
            .with_release(4)
            .with_weight(Rational::new(1, 3))
            .unwrap();
        Instance::new(3, vec![c1, c2], "demo set").unwrap()
    }

    #[test]
    fn rationals_round_trip() {
        for s in ["7", "1.25", "0.5", "1/3", "-2.05"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(parse_rational(&format_rational(&r)), Some(r));
        }
        assert_eq!(format_rational(&Rational::new(5, 4)), "1.25");
        assert_eq!(parse_rational("0.1"), Some(Rational::new(1, 10)));
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn both_formats_round_trip() {
        let i = demo();
        assert_eq!(parse_instance(&write_flow_csv(&i)).unwrap(), i);
        assert_eq!(parse_instance(&write_compact_csv(&i)).unwrap(), i);
    }

    #[test]
    fn m_defaults_to_largest_port() {
        let text = "coflow_id,release,weight,input,output,size\n1,0,1,2,1,4\n";
        let i = parse_flow_csv(text).unwrap();
        assert_eq!(i.ports(), 2);
        assert_eq!(i.coflow(0).get(1, 0), 4);
    }

    #[test]
    fn duplicates_rejected() {
        let text = "coflow_id,release,weight,input,output,size\n1,0,1,1,1,4\n1,0,1,1,1,2\n";
        assert!(matches!(parse_flow_csv(text), Err(FormatError::DuplicateFlow { .. })));
        let text = "coflow_id,release,weight,m,flows\n1,0,1,2,1:1:4;1:1:3\n";
        assert!(matches!(parse_compact_csv(text), Err(FormatError::DuplicateFlow { .. })));
    }

    #[test]
    fn trace_round_trip() {
        let trace = ScheduleTrace::from_slots(&[vec![(0, 0, 0), (1, 1, 1)], vec![(0, 0, 0)]]);
        let text = write_trace_csv(&trace);
        assert_eq!(text, "slot,input,output,coflow\n0,1,1,1\n0,2,2,2\n1,1,1,1\n");
        let back = parse_trace_csv(&text).unwrap();
        assert_eq!(back.unit_rows(), trace.unit_rows());
    }
}
