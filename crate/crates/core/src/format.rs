//! Text formats for every instance kind.
//!
//! Files are line oriented with whitespace-separated tokens; blank lines are
//! skipped. Bit strings list coordinate 0 first, and a zero-length bit
//! string (t = 0) is simply omitted. Each `write_*` produces the canonical
//! form, which the matching `parse_*` reads back unchanged.
//!
//! ```text
//! gf2matrix <rows> <cols>          one line of <cols> 0/1 characters per row (none if cols = 0)
//! graph <n> <m>                    then m lines: e <id> <u> <v> [p=<bits>] [w=<int>] [s=<0|1>]
//! perturbed                        then A: gf2matrix block, P: gf2matrix block
//! evencut-set                      graph block, then T <i> <v...> for i = 1..t in order
//! evencut-dim t=<t>                graph block (s=1 marks Σ), tau <v> <bits> for v = 1..n, alpha <bits>
//! graft s=<s> t=<t>                graph block, then B, C, D each followed by a gf2matrix block
//! matching t=<t>                   graph block with p= and w= on every edge, alpha <bits>
//! parity t=<t>                     graph block with p= on every edge, [T <v...>], alpha <bits>
//! skewmatrix n=<n> t=<t>           lines <i> <j> <coef>:<bits>:<deg>... for non-zero entries, i < j
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use thiserror::Error;

use crate::evencut::{EvenCutError, EvenCutInstance, SetEvenCutInstance};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::graft::{GraftError, SignedGraft};
use crate::graph::{EdgeId, EdgeLabeling, MultiGraph, Vertex};
use crate::parity::{Parity, MAX_PARITY_DIM};
use crate::parityjoin::{ParityGraph, ParityJoinError};
use crate::pfaffian::{GroupRingPoly, MatchingError, MatchingInstance, SkewError, SkewRingMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Eof(String),
    #[error("{0}")]
    Invalid(String),
}

impl From<EvenCutError> for FormatError {
    fn from(e: EvenCutError) -> Self {
        FormatError::Invalid(e.to_string())
    }
}

impl From<GraftError> for FormatError {
    fn from(e: GraftError) -> Self {
        FormatError::Invalid(e.to_string())
    }
}

impl From<MatchingError> for FormatError {
    fn from(e: MatchingError) -> Self {
        FormatError::Invalid(e.to_string())
    }
}

impl From<ParityJoinError> for FormatError {
    fn from(e: ParityJoinError) -> Self {
        FormatError::Invalid(e.to_string())
    }
}

struct Lines<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
            .filter(|(_, toks)| !toks.is_empty())
            .collect();
        Self { lines, pos: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), FormatError> {
        let line = self
            .lines
            .get(self.pos)
            .cloned()
            .ok_or_else(|| FormatError::Eof(format!("expected {what}")))?;
        self.pos += 1;
        Ok(line)
    }

    fn peek_keyword(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|(_, t)| t[0])
    }

    fn finish(&self) -> Result<(), FormatError> {
        match self.lines.get(self.pos) {
            Some((line, toks)) => err(
                *line,
                format!("unexpected trailing line starting with `{}`", toks[0]),
            ),
            None => Ok(()),
        }
    }
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Syntax {
        line,
        msg: msg.into(),
    })
}

fn num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, FormatError> {
    tok.parse().or_else(|_| {
        err(
            line,
            format!("{what}: `{tok}` is not a non-negative integer"),
        )
    })
}

fn keyed<T: std::str::FromStr>(line: usize, tok: &str, key: &str) -> Result<T, FormatError> {
    match tok.strip_prefix(key).and_then(|r| r.strip_prefix('=')) {
        Some(v) => num(line, v, key),
        None => err(line, format!("expected `{key}=<value>`, found `{tok}`")),
    }
}

fn expect_header<'a>(
    lines: &mut Lines<'a>,
    keyword: &str,
    arity: usize,
) -> Result<(usize, Vec<&'a str>), FormatError> {
    let (line, toks) = lines.next(&format!("`{keyword}` header"))?;
    if toks[0] != keyword {
        return err(line, format!("expected `{keyword}`, found `{}`", toks[0]));
    }
    if toks.len() != arity + 1 {
        return err(
            line,
            format!("`{keyword}` takes {arity} fields, found {}", toks.len() - 1),
        );
    }
    Ok((line, toks))
}

fn bits(line: usize, tok: Option<&&str>, t: u32, what: &str) -> Result<Parity, FormatError> {
    let s = tok.copied().unwrap_or("");
    match Parity::parse_bits(s) {
        Some((p, len)) if len == t => Ok(p),
        _ => err(line, format!("{what}: expected {t} bits, found `{s}`")),
    }
}

fn join_tokens<I: IntoIterator<Item = String>>(toks: I) -> String {
    toks.into_iter()
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

fn read_gf2matrix(lines: &mut Lines) -> Result<Gf2Matrix, FormatError> {
    let (line, toks) = expect_header(lines, "gf2matrix", 2)?;
    let rows: usize = num(line, toks[1], "rows")?;
    let cols: usize = num(line, toks[2], "cols")?;
    let mut out = Vec::with_capacity(rows);
    if cols == 0 {
        // Empty rows have no line of their own.
        return Ok(Gf2Matrix::zeros(rows, 0));
    }
    for r in 1..=rows {
        let (line, toks) = lines.next(&format!("row {r} of {rows}"))?;
        if toks.len() != 1 {
            return err(line, format!("row {r}: entries must not be separated"));
        }
        let row = toks[0];
        if row.len() != cols {
            return err(
                line,
                format!(
                    "row {r}: wrong length, expected {cols} entries, found {}",
                    row.len()
                ),
            );
        }
        if let Some((c, ch)) = row
            .chars()
            .enumerate()
            .find(|(_, ch)| *ch != '0' && *ch != '1')
        {
            return err(
                line,
                format!("row {r}, column {}: invalid character `{ch}`", c + 1),
            );
        }
        out.push(Gf2Vector::from_bits(row.chars().map(|c| c == '1')));
    }
    Ok(Gf2Matrix::from_rows(cols, out).expect("rows have the declared width"))
}

fn put_gf2matrix(out: &mut String, m: &Gf2Matrix) {
    writeln!(out, "gf2matrix {} {}", m.nrows(), m.ncols()).unwrap();
    if m.ncols() == 0 {
        return;
    }
    for r in m.rows() {
        let s: String = r.bits().map(|b| if b { '1' } else { '0' }).collect();
        writeln!(out, "{s}").unwrap();
    }
}

pub fn parse_gf2matrix(text: &str) -> Result<Gf2Matrix, FormatError> {
    let mut lines = Lines::new(text);
    let m = read_gf2matrix(&mut lines)?;
    lines.finish()?;
    Ok(m)
}

pub fn write_gf2matrix(m: &Gf2Matrix) -> String {
    let mut out = String::new();
    put_gf2matrix(&mut out, m);
    out
}

/// `(A, P)` stored in one file.
pub fn parse_perturbed(text: &str) -> Result<(Gf2Matrix, Gf2Matrix), FormatError> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "perturbed", 0)?;
    let mut read_block = |name: &str| {
        let (line, toks) = lines.next(&format!("`{name}` block"))?;
        if toks != [name] {
            return err(line, format!("expected `{name}`"));
        }
        read_gf2matrix(&mut lines)
    };
    let a = read_block("A")?;
    let p = read_block("P")?;
    lines.finish()?;
    if (a.nrows(), a.ncols()) != (p.nrows(), p.ncols()) {
        return Err(FormatError::Invalid(format!(
            "A is {}x{} but P is {}x{}",
            a.nrows(),
            a.ncols(),
            p.nrows(),
            p.ncols()
        )));
    }
    Ok((a, p))
}

pub fn write_perturbed(a: &Gf2Matrix, p: &Gf2Matrix) -> String {
    let mut out = String::from("perturbed\nA\n");
    put_gf2matrix(&mut out, a);
    out.push_str("P\n");
    put_gf2matrix(&mut out, p);
    out
}

/// A graph block with its optional per-edge attributes, in edge order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct GraphBlock {
    graph: MultiGraph,
    parity: Vec<Option<(Parity, u32)>>,
    weight: Vec<Option<u64>>,
    sigma: BTreeSet<EdgeId>,
}

impl GraphBlock {
    fn parities(&self, t: u32, line: usize) -> Result<Vec<Parity>, FormatError> {
        self.parity
            .iter()
            .zip(self.graph.edges())
            .map(|(p, e)| match p {
                Some((p, len)) if *len == t => Ok(*p),
                Some((_, len)) => err(
                    line,
                    format!("edge {}: p= has {len} bits, expected {t}", e.id),
                ),
                None => err(line, format!("edge {}: missing p=", e.id)),
            })
            .collect()
    }

    fn no_extra(
        &self,
        line: usize,
        parity: bool,
        weight: bool,
        sigma: bool,
    ) -> Result<(), FormatError> {
        let edge = |i: usize| self.graph.edges()[i].id;
        if let (false, Some(i)) = (parity, self.parity.iter().position(Option::is_some)) {
            return err(line, format!("edge {}: p= is not allowed here", edge(i)));
        }
        if let (false, Some(i)) = (weight, self.weight.iter().position(Option::is_some)) {
            return err(line, format!("edge {}: w= is not allowed here", edge(i)));
        }
        if let (false, Some(&id)) = (sigma, self.sigma.iter().next()) {
            return err(line, format!("edge {id}: s= is not allowed here"));
        }
        Ok(())
    }
}

fn read_graph(lines: &mut Lines) -> Result<(usize, GraphBlock), FormatError> {
    let (header, toks) = expect_header(lines, "graph", 2)?;
    let n: usize = num(header, toks[1], "vertex count")?;
    let m: usize = num(header, toks[2], "edge count")?;
    let mut block = GraphBlock {
        graph: MultiGraph::new(n),
        ..GraphBlock::default()
    };
    for k in 1..=m {
        let (line, toks) = lines.next(&format!("edge {k} of {m}"))?;
        if toks[0] != "e" || toks.len() < 4 {
            return err(line, "expected `e <id> <u> <v> [attributes]`");
        }
        let id: EdgeId = num(line, toks[1], "edge id")?;
        let u: Vertex = num(line, toks[2], "endpoint")?;
        let v: Vertex = num(line, toks[3], "endpoint")?;
        if let Err(e) = block.graph.add_edge(id, u, v) {
            return err(line, e.to_string());
        }
        let (mut p, mut w, mut s) = (None, None, false);
        for tok in &toks[4..] {
            let Some((key, val)) = tok.split_once('=') else {
                return err(line, format!("attribute `{tok}` is not key=value"));
            };
            let dup = match key {
                "p" => p
                    .replace(Parity::parse_bits(val).ok_or_else(|| FormatError::Syntax {
                        line,
                        msg: format!(
                            "p=: `{val}` is not a bit string of length <= {MAX_PARITY_DIM}"
                        ),
                    })?)
                    .is_some(),
                "w" => w.replace(num::<u64>(line, val, "w=")?).is_some(),
                "s" => {
                    let was = s;
                    s = match val {
                        "0" => false,
                        "1" => true,
                        _ => return err(line, format!("s= must be 0 or 1, found `{val}`")),
                    };
                    was
                }
                _ => return err(line, format!("unknown attribute `{key}`")),
            };
            if dup {
                return err(line, format!("attribute `{key}` given twice"));
            }
        }
        block.parity.push(p);
        block.weight.push(w);
        if s {
            block.sigma.insert(id);
        }
    }
    Ok((header, block))
}

fn put_graph(
    out: &mut String,
    g: &MultiGraph,
    parity: Option<(&dyn Fn(EdgeId) -> Parity, u32)>,
    weight: Option<&dyn Fn(EdgeId) -> u64>,
    sigma: Option<&BTreeSet<EdgeId>>,
) {
    writeln!(out, "graph {} {}", g.n(), g.m()).unwrap();
    for e in g.edges() {
        let mut toks = vec![format!("e {} {} {}", e.id, e.u, e.v)];
        if let Some((p, t)) = parity {
            toks.push(format!("p={}", p(e.id).to_bits(t)));
        }
        if let Some(w) = weight {
            toks.push(format!("w={}", w(e.id)));
        }
        if sigma.is_some_and(|s| s.contains(&e.id)) {
            toks.push("s=1".to_string());
        }
        writeln!(out, "{}", toks.join(" ")).unwrap();
    }
}

pub fn parse_graph(text: &str) -> Result<MultiGraph, FormatError> {
    let mut lines = Lines::new(text);
    let (line, block) = read_graph(&mut lines)?;
    block.no_extra(line, false, false, false)?;
    lines.finish()?;
    Ok(block.graph)
}

pub fn write_graph(g: &MultiGraph) -> String {
    let mut out = String::new();
    put_graph(&mut out, g, None, None, None);
    out
}

fn vertex_list(line: usize, toks: &[&str], n: usize) -> Result<Vec<Vertex>, FormatError> {
    toks.iter()
        .map(|tok| {
            let v: Vertex = num(line, tok, "vertex")?;
            if v == 0 || v > n {
                return err(line, format!("vertex {v} outside 1..={n}"));
            }
            Ok(v)
        })
        .collect()
}

pub fn parse_evencut_set(text: &str) -> Result<SetEvenCutInstance, FormatError> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "evencut-set", 0)?;
    let (gline, block) = read_graph(&mut lines)?;
    block.no_extra(gline, false, false, false)?;
    let n = block.graph.n();
    let mut terminals = Vec::new();
    while lines.peek_keyword() == Some("T") {
        let (line, toks) = lines.next("terminal set")?;
        if toks.len() < 2 {
            return err(line, "expected `T <i> <vertices...>`");
        }
        let i: usize = num(line, toks[1], "terminal index")?;
        if i != terminals.len() + 1 {
            return err(
                line,
                format!("expected T {}, found T {i}", terminals.len() + 1),
            );
        }
        let vs = vertex_list(line, &toks[2..], n)?;
        let set: BTreeSet<Vertex> = vs.iter().copied().collect();
        if set.len() != vs.len() {
            return err(line, format!("T_{i} lists a vertex twice"));
        }
        terminals.push(set);
    }
    lines.finish()?;
    Ok(SetEvenCutInstance::new(block.graph, terminals)?)
}

pub fn write_evencut_set(inst: &SetEvenCutInstance) -> String {
    let mut out = String::from("evencut-set\n");
    put_graph(&mut out, &inst.graph, None, None, None);
    for (i, set) in inst.terminals.iter().enumerate() {
        let toks = std::iter::once(format!("T {}", i + 1)).chain(set.iter().map(|v| v.to_string()));
        writeln!(out, "{}", join_tokens(toks)).unwrap();
    }
    out
}

fn read_t_header(lines: &mut Lines, keyword: &str) -> Result<u32, FormatError> {
    let (line, toks) = expect_header(lines, keyword, 1)?;
    let t: u32 = keyed(line, toks[1], "t")?;
    if t > MAX_PARITY_DIM {
        return err(line, format!("t = {t} exceeds {MAX_PARITY_DIM}"));
    }
    Ok(t)
}

fn read_alpha(lines: &mut Lines, t: u32) -> Result<Parity, FormatError> {
    let (line, toks) = lines.next("`alpha` line")?;
    if toks[0] != "alpha" || toks.len() > 2 {
        return err(line, "expected `alpha <bits>`");
    }
    bits(line, toks.get(1), t, "alpha")
}

pub fn parse_evencut_dim(text: &str) -> Result<EvenCutInstance, FormatError> {
    let mut lines = Lines::new(text);
    let t = read_t_header(&mut lines, "evencut-dim")?;
    let (gline, block) = read_graph(&mut lines)?;
    block.no_extra(gline, false, false, true)?;
    let n = block.graph.n();
    let mut tau = Vec::with_capacity(n);
    for v in 1..=n {
        let (line, toks) = lines.next(&format!("`tau {v}` line"))?;
        if toks[0] != "tau" || toks.len() < 2 || toks.len() > 3 {
            return err(line, format!("expected `tau {v} <bits>`"));
        }
        if num::<Vertex>(line, toks[1], "vertex")? != v {
            return err(line, format!("expected the label of vertex {v}"));
        }
        tau.push(bits(line, toks.get(2), t, "tau")?);
    }
    let alpha = read_alpha(&mut lines, t)?;
    lines.finish()?;
    Ok(EvenCutInstance::new(
        block.graph,
        t,
        tau,
        block.sigma,
        alpha,
    )?)
}

pub fn write_evencut_dim(inst: &EvenCutInstance) -> String {
    let mut out = format!("evencut-dim t={}\n", inst.t);
    put_graph(&mut out, &inst.graph, None, None, Some(&inst.sigma));
    for (i, p) in inst.tau.iter().enumerate() {
        writeln!(
            out,
            "{}",
            join_tokens([format!("tau {}", i + 1), p.to_bits(inst.t)])
        )
        .unwrap();
    }
    writeln!(
        out,
        "{}",
        join_tokens(["alpha".to_string(), inst.alpha.to_bits(inst.t)])
    )
    .unwrap();
    out
}

pub fn parse_graft(text: &str) -> Result<SignedGraft, FormatError> {
    let mut lines = Lines::new(text);
    let (line, toks) = expect_header(&mut lines, "graft", 2)?;
    let s: usize = keyed(line, toks[1], "s")?;
    let t: usize = keyed(line, toks[2], "t")?;
    let (gline, block) = read_graph(&mut lines)?;
    block.no_extra(gline, false, false, false)?;
    let mut mats = Vec::new();
    for (name, rows, cols) in [
        ("B", block.graph.n(), t),
        ("C", s, block.graph.m()),
        ("D", s, t),
    ] {
        let (line, toks) = lines.next(&format!("`{name}` block"))?;
        if toks != [name] {
            return err(line, format!("expected `{name}`"));
        }
        let m = read_gf2matrix(&mut lines)?;
        if (m.nrows(), m.ncols()) != (rows, cols) {
            return err(
                line,
                format!(
                    "{name} must be {rows}x{cols}, found {}x{}",
                    m.nrows(),
                    m.ncols()
                ),
            );
        }
        mats.push(m);
    }
    lines.finish()?;
    let d = mats.pop().expect("three blocks");
    let c = mats.pop().expect("three blocks");
    let b = mats.pop().expect("three blocks");
    Ok(SignedGraft::new(block.graph, b, c, d)?)
}

pub fn write_graft(sg: &SignedGraft) -> String {
    let mut out = format!("graft s={} t={}\n", sg.s(), sg.t());
    put_graph(&mut out, &sg.graph, None, None, None);
    for (name, m) in [("B", &sg.b), ("C", &sg.c), ("D", &sg.d)] {
        writeln!(out, "{name}").unwrap();
        put_gf2matrix(&mut out, m);
    }
    out
}

pub fn parse_matching(text: &str) -> Result<MatchingInstance, FormatError> {
    let mut lines = Lines::new(text);
    let t = read_t_header(&mut lines, "matching")?;
    let (gline, block) = read_graph(&mut lines)?;
    block.no_extra(gline, true, true, false)?;
    let gamma = block.parities(t, gline)?;
    let weight: Vec<u64> = block
        .weight
        .iter()
        .zip(block.graph.edges())
        .map(|(w, e)| {
            w.ok_or_else(|| FormatError::Syntax {
                line: gline,
                msg: format!("edge {}: missing w=", e.id),
            })
        })
        .collect::<Result<_, _>>()?;
    let alpha = read_alpha(&mut lines, t)?;
    lines.finish()?;
    let g = block.graph;
    let (weight, gamma) = (
        EdgeLabeling::from_vec(&g, weight),
        EdgeLabeling::from_vec(&g, gamma),
    );
    Ok(MatchingInstance::new(g, t, weight, gamma, alpha)?)
}

pub fn write_matching(inst: &MatchingInstance) -> String {
    let mut out = format!("matching t={}\n", inst.t);
    let p = |id| *inst.gamma.get(id);
    let w = |id| *inst.weight.get(id);
    put_graph(&mut out, &inst.graph, Some((&p, inst.t)), Some(&w), None);
    writeln!(
        out,
        "{}",
        join_tokens(["alpha".to_string(), inst.alpha.to_bits(inst.t)])
    )
    .unwrap();
    out
}

/// A parity graph with an optional vertex list (the `T` line) and a demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityInstance {
    pub graph: ParityGraph,
    /// Vertices of the `T` line in file order; empty when absent.
    pub terminals: Vec<Vertex>,
    pub alpha: Parity,
}

pub fn parse_parity(text: &str) -> Result<ParityInstance, FormatError> {
    let mut lines = Lines::new(text);
    let t = read_t_header(&mut lines, "parity")?;
    let (gline, block) = read_graph(&mut lines)?;
    block.no_extra(gline, true, false, false)?;
    let gamma = block.parities(t, gline)?;
    let mut terminals = Vec::new();
    if lines.peek_keyword() == Some("T") {
        let (line, toks) = lines.next("`T` line")?;
        terminals = vertex_list(line, &toks[1..], block.graph.n())?;
    }
    let alpha = read_alpha(&mut lines, t)?;
    lines.finish()?;
    let gamma = EdgeLabeling::from_vec(&block.graph, gamma);
    Ok(ParityInstance {
        graph: ParityGraph::new(block.graph, t, gamma)?,
        terminals,
        alpha,
    })
}

pub fn write_parity(inst: &ParityInstance) -> String {
    let pg = &inst.graph;
    let mut out = format!("parity t={}\n", pg.t);
    let p = |id| *pg.gamma.get(id);
    put_graph(&mut out, &pg.graph, Some((&p, pg.t)), None, None);
    if !inst.terminals.is_empty() {
        let toks =
            std::iter::once("T".to_string()).chain(inst.terminals.iter().map(|v| v.to_string()));
        writeln!(out, "{}", join_tokens(toks)).unwrap();
    }
    writeln!(
        out,
        "{}",
        join_tokens(["alpha".to_string(), inst.alpha.to_bits(pg.t)])
    )
    .unwrap();
    out
}

fn parse_term(line: usize, tok: &str, t: u32) -> Result<(BigInt, Parity, u64), FormatError> {
    let parts: Vec<&str> = tok.split(':').collect();
    if parts.len() != 3 {
        return err(line, format!("term `{tok}` is not <coef>:<bits>:<deg>"));
    }
    let coef: BigInt = parts[0].parse().or_else(|_| {
        err(
            line,
            format!("coefficient `{}` is not an integer", parts[0]),
        )
    })?;
    let beta = bits(line, Some(&parts[1]), t, "term parity")?;
    let deg: u64 = num(line, parts[2], "degree")?;
    Ok((coef, beta, deg))
}

pub fn parse_skew(text: &str) -> Result<SkewRingMatrix, FormatError> {
    let mut lines = Lines::new(text);
    let (line, toks) = expect_header(&mut lines, "skewmatrix", 2)?;
    let n: usize = keyed(line, toks[1], "n")?;
    let t: u32 = keyed(line, toks[2], "t")?;
    if t > MAX_PARITY_DIM {
        return err(line, format!("t = {t} exceeds {MAX_PARITY_DIM}"));
    }
    let mut d = SkewRingMatrix::zero(n, t);
    let mut last = (0, 0);
    while let Some((line, toks)) = lines.lines.get(lines.pos).cloned() {
        lines.pos += 1;
        if toks.len() < 3 {
            return err(line, "expected `<i> <j> <terms...>`");
        }
        let i: usize = num(line, toks[0], "row")?;
        let j: usize = num(line, toks[1], "column")?;
        if !(1..=n).contains(&i) || !(i + 1..=n).contains(&j) {
            return err(
                line,
                format!("entry ({i}, {j}) must satisfy 1 <= i < j <= {n}"),
            );
        }
        if (i, j) <= last {
            return err(
                line,
                format!("entry ({i}, {j}) is out of order or repeated"),
            );
        }
        last = (i, j);
        let mut p = GroupRingPoly::zero(t);
        for tok in &toks[2..] {
            let (coef, beta, deg) = parse_term(line, tok, t)?;
            p.add_term(beta, deg, coef);
        }
        d.set(i, j, p).map_err(|e: SkewError| FormatError::Syntax {
            line,
            msg: e.to_string(),
        })?;
    }
    Ok(d)
}

pub fn write_skew(d: &SkewRingMatrix) -> String {
    let mut out = format!("skewmatrix n={} t={}\n", d.n(), d.t());
    for i in 1..=d.n() {
        for j in i + 1..=d.n() {
            let p = d.get(i, j);
            if !p.is_zero() {
                writeln!(out, "{i} {j} {p}").unwrap();
            }
        }
    }
    out
}
