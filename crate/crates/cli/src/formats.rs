//! Text formats read and written by the command line tool.
//!
//! All formats ignore blank lines and anything after `#`.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use xconn_core::category::{MorphismSpec, ObjectSpec, Side, SoCategory};
use xconn_core::esn::InductiveGroupoid;
use xconn_core::rees::ReesSpec;
use xconn_core::FiniteSemigroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            f.write_str(&self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn parse_usize(line: usize, token: &str) -> Result<usize, ParseError> {
    token.parse().or_else(|_| err(line, format!("expected a non-negative integer, found `{token}`")))
}

/// `key: rest` with the key compared case-insensitively.
fn keyed<'a>(l: &'a str, key: &str) -> Option<&'a str> {
    let (k, rest) = l.split_once(':')?;
    k.trim().eq_ignore_ascii_case(key).then(|| rest.trim())
}

struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { lines: content_lines(text), pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        let last = self.lines.last().map_or(0, |l| l.0);
        let item = self.peek().ok_or(ParseError { line: last, message: format!("unexpected end of input, expected {what}") })?;
        self.pos += 1;
        Ok(item)
    }

    fn next_keyed(&mut self, key: &str) -> Option<(usize, &'a str)> {
        let (n, l) = self.peek()?;
        let rest = keyed(l, key)?;
        self.pos += 1;
        Some((n, rest))
    }
}

fn read_cayley(cur: &mut Cursor<'_>) -> Result<FiniteSemigroup, ParseError> {
    let (first, head) = cur.next("the order")?;
    let n = parse_usize(first, head)?;
    if n == 0 {
        return err(first, "order must be positive");
    }
    let mut grid = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, row) = cur.next("a table row")?;
        let entries = row.split_whitespace().map(|t| parse_usize(ln, t)).collect::<Result<Vec<_>, _>>()?;
        if entries.len() != n {
            return err(ln, format!("row has {} entries, expected {n}", entries.len()));
        }
        grid.push(entries);
    }
    let mut labels = None;
    let mut zero = None;
    loop {
        if let Some((ln, rest)) = cur.next_keyed("labels") {
            let l: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if l.len() != n {
                return err(ln, format!("expected {n} labels, found {}", l.len()));
            }
            labels = Some(l);
        } else if let Some((ln, rest)) = cur.next_keyed("zero") {
            zero = Some((ln, parse_usize(ln, rest)?));
        } else {
            break;
        }
    }
    FiniteSemigroup::from_cayley_table(&grid, labels, zero.map(|z| z.1))
        .or_else(|e| err(zero.map_or(first, |z| z.0), e.to_string()))
}

/// Cayley table: the order `n`, `n` rows of 0-based indices, then optional
/// `labels: ...` and `zero: k` lines.
pub fn parse_cayley(text: &str) -> Result<FiniteSemigroup, ParseError> {
    let mut cur = Cursor::new(text);
    let s = read_cayley(&mut cur)?;
    if let Some((ln, l)) = cur.peek() {
        return err(ln, format!("unexpected trailing content `{l}`"));
    }
    Ok(s)
}

pub fn write_cayley(s: &FiniteSemigroup) -> String {
    let mut out = format!("{}\n", s.order());
    for row in s.to_grid() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    if let Some(labels) = s.labels() {
        let _ = writeln!(out, "labels: {}", labels.join(" "));
    }
    if let Some(z) = s.zero() {
        let _ = writeln!(out, "zero: {z}");
    }
    out
}

/// Rees matrix data: a Cayley block for the group (with a `labels:` line),
/// then `I: n`, `L: m` and `m` rows of `n` tokens, each a group label or `0`.
pub fn parse_rees(text: &str) -> Result<ReesSpec, ParseError> {
    let mut cur = Cursor::new(text);
    let group = read_cayley(&mut cur)?;
    let Some(labels) = group.labels().map(<[String]>::to_vec) else {
        return err(0, "the group block of a Rees file needs a `labels:` line");
    };
    if labels.iter().any(|l| l == "0") {
        return err(0, "`0` is reserved for the zero entry and cannot label a group element");
    }
    let (ln, rest) = cur.next_keyed("I").ok_or_else(|| ParseError { line: cur.peek().map_or(0, |l| l.0), message: "expected `I: n`".into() })?;
    let i_size = parse_usize(ln, rest)?;
    let (ln, rest) = cur.next_keyed("L").ok_or_else(|| ParseError { line: cur.peek().map_or(ln, |l| l.0), message: "expected `L: m`".into() })?;
    let l_size = parse_usize(ln, rest)?;
    let by_label: HashMap<&str, usize> = labels.iter().enumerate().map(|(k, l)| (l.as_str(), k)).collect();
    let mut matrix = Vec::with_capacity(l_size);
    for _ in 0..l_size {
        let (ln, row) = cur.next("a matrix row")?;
        let tokens: Vec<&str> = row.split_whitespace().collect();
        if tokens.len() != i_size {
            return err(ln, format!("matrix row has {} entries, expected {i_size}", tokens.len()));
        }
        let entries = tokens
            .iter()
            .map(|&t| match t {
                "0" => Ok(None),
                _ => by_label.get(t).map(|&g| Some(g)).ok_or(ParseError { line: ln, message: format!("unknown group element `{t}`") }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        matrix.push(entries);
    }
    if let Some((ln, l)) = cur.peek() {
        return err(ln, format!("unexpected trailing content `{l}`"));
    }
    Ok(ReesSpec { group, i_size, l_size, matrix })
}

pub fn write_rees(spec: &ReesSpec) -> String {
    let mut out = write_cayley(&spec.group);
    if spec.group.labels().is_none() {
        let labels: Vec<String> = spec.group.elements().map(|g| format!("g{g}")).collect();
        let _ = writeln!(out, "labels: {}", labels.join(" "));
    }
    let _ = writeln!(out, "I: {}", spec.i_size);
    let _ = writeln!(out, "L: {}", spec.l_size);
    for row in &spec.matrix {
        let tokens: Vec<String> = row
            .iter()
            .map(|e| match e {
                None => "0".to_string(),
                Some(g) if spec.group.labels().is_some() => spec.group.label(*g).into_owned(),
                Some(g) => format!("g{g}"),
            })
            .collect();
        out.push_str(&tokens.join(" "));
        out.push('\n');
    }
    out
}

/// Abstract category with subobjects:
///
/// ```text
/// objects: 2
/// labels: 0 a          # optional
/// hom 0 0: id0
/// hom 0 1: i
/// compose: i id1 i     # f then g is h
/// inclusion: 0 1 i
/// ```
///
/// Every composable pair needs a `compose` line; identities are found.
pub fn parse_socat(text: &str) -> Result<SoCategory, ParseError> {
    let mut cur = Cursor::new(text);
    let (ln, rest) = cur.next_keyed("objects").ok_or(ParseError { line: 1, message: "expected `objects: n`".into() })?;
    let n = parse_usize(ln, rest)?;
    let mut labels: Vec<String> = (0..n).map(|k| k.to_string()).collect();
    let mut morphisms: Vec<MorphismSpec> = Vec::new();
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut triples = HashMap::new();
    let mut inclusions = Vec::new();
    let object = |ln: usize, t: &str| -> Result<usize, ParseError> {
        let k = parse_usize(ln, t)?;
        if k >= n {
            return err(ln, format!("object {k} out of range"));
        }
        Ok(k)
    };
    while let Some((ln, l)) = cur.peek() {
        cur.pos += 1;
        if let Some(rest) = keyed(l, "labels") {
            let l: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if l.len() != n {
                return err(ln, format!("expected {n} labels, found {}", l.len()));
            }
            labels = l;
        } else if let Some(rest) = l.strip_prefix("hom ") {
            let Some((pair, list)) = rest.split_once(':') else { return err(ln, "expected `hom a b: names`") };
            let ends: Vec<&str> = pair.split_whitespace().collect();
            let [a, b] = ends.as_slice() else { return err(ln, "expected two objects after `hom`") };
            let (a, b) = (object(ln, a)?, object(ln, b)?);
            for name in list.split_whitespace() {
                if names.insert(name.to_string(), morphisms.len()).is_some() {
                    return err(ln, format!("morphism `{name}` declared twice"));
                }
                morphisms.push(MorphismSpec { dom: a, cod: b, label: name.to_string(), payload: None });
            }
        } else if let Some(rest) = keyed(l, "compose") {
            let t: Vec<&str> = rest.split_whitespace().collect();
            let [f, g, h] = t.as_slice() else { return err(ln, "expected `compose: f g h`") };
            let look = |x: &str| names.get(x).copied().ok_or(ParseError { line: ln, message: format!("unknown morphism `{x}`") });
            let (f, g, h) = (look(f)?, look(g)?, look(h)?);
            if triples.insert((f, g), h).is_some_and(|old| old != h) {
                return err(ln, "conflicting composites");
            }
        } else if let Some(rest) = keyed(l, "inclusion") {
            let t: Vec<&str> = rest.split_whitespace().collect();
            let [a, b, m] = t.as_slice() else { return err(ln, "expected `inclusion: a b name`") };
            let (a, b) = (object(ln, a)?, object(ln, b)?);
            let m = *names.get(*m).ok_or(ParseError { line: ln, message: format!("unknown morphism `{m}`") })?;
            if (morphisms[m].dom, morphisms[m].cod) != (a, b) {
                return err(ln, "inclusion has the wrong endpoints");
            }
            inclusions.push(m);
        } else {
            return err(ln, format!("unrecognised line `{l}`"));
        }
    }
    let objects = labels.into_iter().map(|label| ObjectSpec { label, payload: None }).collect();
    SoCategory::new(Side::Abstract, objects, morphisms, |f, g| triples.get(&(f, g)).copied(), &inclusions)
        .or_else(|e| err(0, e.to_string()))
}

fn token(label: &str, fallback: String) -> String {
    if label.is_empty() || label.contains(|c: char| c.is_whitespace() || c == '#' || c == ':') {
        fallback
    } else {
        label.to_string()
    }
}

pub fn write_socat(cat: &SoCategory) -> String {
    let mut out = format!("objects: {}\n", cat.object_count());
    let mut seen = std::collections::HashSet::new();
    let names: Vec<String> = cat
        .morphisms()
        .map(|m| {
            let name = token(cat.morphism_label(m), format!("m{m}"));
            if seen.insert(name.clone()) {
                name
            } else {
                format!("m{m}")
            }
        })
        .collect();
    let labels: Vec<String> = cat.objects().map(|c| token(cat.object_label(c), c.to_string())).collect();
    let _ = writeln!(out, "labels: {}", labels.join(" "));
    for a in cat.objects() {
        for b in cat.objects() {
            let hom = cat.hom(a, b);
            if !hom.is_empty() {
                let list: Vec<&str> = hom.iter().map(|&m| names[m].as_str()).collect();
                let _ = writeln!(out, "hom {a} {b}: {}", list.join(" "));
            }
        }
    }
    for (f, g, h) in cat.composition_triples() {
        let _ = writeln!(out, "compose: {} {} {}", names[f], names[g], names[h]);
    }
    for i in cat.inclusions() {
        if !cat.is_identity(i) {
            let _ = writeln!(out, "inclusion: {} {} {}", cat.dom(i), cat.cod(i), names[i]);
        }
    }
    out
}

/// Inductive groupoid export: the meet table of the objects, the morphisms
/// as `index dom cod inverse label`, then the strict order pairs `x < y`.
pub fn write_groupoid(g: &InductiveGroupoid) -> String {
    let n = g.object_count();
    let mut out = format!("objects: {n}\n");
    let _ = writeln!(out, "labels: {}", g.object_labels.join(" "));
    out.push_str("meet:\n");
    for e in 0..n {
        let row: Vec<String> = (0..n).map(|f| g.meet(e, f).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    let _ = writeln!(out, "morphisms: {}", g.morphism_count());
    for x in 0..g.morphism_count() {
        let _ = writeln!(out, "{x} {} {} {} {}", g.dom[x], g.cod[x], g.inverse[x], g.morphism_labels[x]);
    }
    out.push_str("order:\n");
    for x in 0..g.morphism_count() {
        for y in 0..g.morphism_count() {
            if x != y && g.le(x, y) {
                let _ = writeln!(out, "{x} {y}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use xconn_core::fixtures;

    #[test]
    fn cayley_round_trip() {
        for fx in fixtures::corpus() {
            let text = write_cayley(&fx.semigroup);
            assert_eq!(parse_cayley(&text).unwrap(), fx.semigroup, "{}", fx.name);
        }
    }

    #[test]
    fn cayley_errors_carry_lines() {
        let e = parse_cayley("2\n0 1\n1\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_cayley("2\n0 1\n1 1\nlabels: a\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(parse_cayley("2\n0 0\n0 1\nzero: 1\n").is_err());
        assert!(parse_cayley("2\n0 1\n1 x\n").is_err());
        assert!(parse_cayley("").is_err());
    }

    #[test]
    fn comments_and_zero_hint() {
        let s = parse_cayley("# semilattice\n2\n0 0 # row\n0 1\n\nzero: 0\n").unwrap();
        assert_eq!(s.zero(), Some(0));
    }

    #[test]
    fn rees_round_trip() {
        for spec in [fixtures::b2_spec(), fixtures::m9_spec()] {
            let text = write_rees(&spec);
            let back = parse_rees(&text).unwrap();
            assert_eq!(back.matrix, spec.matrix);
            assert_eq!((back.i_size, back.l_size), (spec.i_size, spec.l_size));
        }
    }

    #[test]
    fn rees_needs_labels() {
        assert!(parse_rees("1\n0\nI: 1\nL: 1\n0\n").is_err());
        let e = parse_rees("1\n0\nlabels: e\nI: 1\nL: 1\nx\n").unwrap_err();
        assert_eq!(e.line, 6);
    }

    #[test]
    fn socat_round_trip() {
        let l = xconn_core::category::left_ideal_category(&fixtures::b2()).unwrap();
        let text = write_socat(&l.cat);
        let back = parse_socat(&text).unwrap();
        assert!(xconn_core::category::find_category_isomorphism(&back, &l.cat).is_some());
        assert_eq!(back.inclusions().len(), l.cat.inclusions().len());
    }

    #[test]
    fn socat_rejects_missing_composites() {
        let text = "objects: 1\nhom 0 0: e f\ncompose: e e e\n";
        assert!(parse_socat(text).is_err());
    }

    #[test]
    fn groupoid_export_lists_everything() {
        let g = xconn_core::esn::inductive_groupoid_of(&fixtures::b2()).unwrap();
        let text = write_groupoid(&g);
        assert!(text.starts_with("objects: 3\n"));
        assert!(text.contains("morphisms: 5\n"));
    }
}
