//! The expression grammar for polynomials, differential forms, and
//! multivector fields, with a canonical printer that round-trips.
//!
//!   expr    := ['-'] term (('+'|'-') term)*
//!   term    := factor+
//!   factor  := rational | coord ('^' int)? | 'd'coord ('^' 'd'coord)*
//!            | '@'coord ('^' '@'coord)* | '*'
//!
//! Coordinate basis chains wedge left to right; 'd' names form directions,
//! '@' names coordinate vector fields.

use num_bigint::BigInt;
use plectic::chart::Chart;
use plectic::form::PolyForm;
use plectic::multivec::PolyMultiVec;
use plectic::poly::Poly;
use plectic::rational::{fmt_rat, int, Rat};
use plectic::value::LinearValue;

#[derive(Debug, Clone, PartialEq)]
pub enum Parsed {
    Poly(Poly),
    Form(PolyForm),
    MultiVec(PolyMultiVec),
}

#[derive(Debug, Clone)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at {}: {}", self.position, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Caret,
    Star,
    Slash,
    At,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' | '−' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '@' => {
                out.push((i, Tok::At));
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(bytes[start..i].iter().collect())));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(bytes[start..i].iter().collect())));
            }
            other => {
                return Err(ParseError {
                    position: i,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    chart: &'a Chart,
}

#[derive(Clone)]
struct Term {
    coeff: Rat,
    exps: Vec<u32>,
    form_idx: Option<(Vec<usize>, Rat)>, // sorted indices with sorting sign
    vec_idx: Option<(Vec<usize>, Rat)>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or_else(|| self.toks.last().map(|(p, _)| p + 1).unwrap_or(0))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.here(),
            message: message.into(),
        })
    }

    fn coord(&self, name: &str) -> Option<usize> {
        self.chart.index_of(name)
    }

    /// Classifies an identifier: a chart coordinate, or d<coordinate>.
    fn classify(&self, name: &str) -> Result<IdentKind, ParseError> {
        if let Some(i) = self.coord(name) {
            return Ok(IdentKind::Coord(i));
        }
        if let Some(rest) = name.strip_prefix('d') {
            if let Some(i) = self.coord(rest) {
                return Ok(IdentKind::Diff(i));
            }
        }
        Err(ParseError {
            position: self.here(),
            message: format!("unknown coordinate {name:?}"),
        })
    }

    fn parse_int(&mut self) -> Result<BigInt, ParseError> {
        match self.bump() {
            Some(Tok::Int(s)) => Ok(s.parse().expect("digits")),
            _ => self.err("expected an integer"),
        }
    }

    fn parse_term(&mut self) -> Result<Term, ParseError> {
        let mut term = Term {
            coeff: int(1),
            exps: vec![0; self.chart.dim()],
            form_idx: None,
            vec_idx: None,
        };
        let mut saw_factor = false;
        loop {
            match self.peek() {
                Some(Tok::Int(_)) => {
                    let n = self.parse_int()?;
                    let q = if matches!(self.peek(), Some(Tok::Slash)) {
                        self.bump();
                        let d = self.parse_int()?;
                        if d == BigInt::from(0) {
                            return self.err("zero denominator");
                        }
                        Rat::new(n, d)
                    } else {
                        Rat::from_integer(n)
                    };
                    term.coeff *= q;
                    saw_factor = true;
                }
                Some(Tok::Star) => {
                    self.bump();
                }
                Some(Tok::At) => {
                    self.bump();
                    let mut chain = Vec::new();
                    loop {
                        let Some(Tok::Ident(name)) = self.bump() else {
                            return self.err("expected a coordinate after '@'");
                        };
                        let Some(i) = self.coord(&name) else {
                            return self.err(format!("unknown coordinate {name:?}"));
                        };
                        chain.push(i);
                        if matches!(self.peek(), Some(Tok::Caret)) {
                            self.bump();
                            if !matches!(self.peek(), Some(Tok::At)) {
                                return self.err("expected '@' to continue the wedge");
                            }
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    merge_chain(&mut term.vec_idx, &chain, &mut term.coeff);
                    saw_factor = true;
                }
                Some(Tok::Ident(name)) => {
                    let name = name.clone();
                    match self.classify(&name)? {
                        IdentKind::Coord(i) => {
                            self.bump();
                            let mut e = 1u32;
                            if matches!(self.peek(), Some(Tok::Caret)) {
                                self.bump();
                                let n = self.parse_int()?;
                                e = n.to_string().parse().map_err(|_| ParseError {
                                    position: self.here(),
                                    message: "exponent out of range".into(),
                                })?;
                            }
                            term.exps[i] += e;
                            saw_factor = true;
                        }
                        IdentKind::Diff(first) => {
                            self.bump();
                            let mut chain = vec![first];
                            while matches!(self.peek(), Some(Tok::Caret)) {
                                self.bump();
                                let Some(Tok::Ident(next)) = self.bump() else {
                                    return self.err("expected d<coordinate> in the wedge");
                                };
                                match self.classify(&next)? {
                                    IdentKind::Diff(i) => chain.push(i),
                                    IdentKind::Coord(_) => {
                                        return self
                                            .err("cannot wedge a coordinate into a form chain")
                                    }
                                }
                            }
                            merge_chain(&mut term.form_idx, &chain, &mut term.coeff);
                            saw_factor = true;
                        }
                    }
                }
                _ => break,
            }
        }
        if !saw_factor {
            return self.err("expected a term");
        }
        if term.form_idx.is_some() && term.vec_idx.is_some() {
            return self.err("a term cannot mix form and vector directions");
        }
        Ok(term)
    }
}

enum IdentKind {
    Coord(usize),
    Diff(usize),
}

// wedges a written chain into the accumulated sorted index set, tracking the
// sorting sign; duplicate directions zero the coefficient.
fn merge_chain(slot: &mut Option<(Vec<usize>, Rat)>, chain: &[usize], coeff: &mut Rat) {
    let (mut idx, mut sign) = match slot.take() {
        Some((i, s)) => (i, s),
        None => (Vec::new(), int(1)),
    };
    for &c in chain {
        idx.push(c);
    }
    // bubble sort with sign
    let mut zero = false;
    for i in 0..idx.len() {
        for j in (i + 1..idx.len()).rev() {
            match idx[j - 1].cmp(&idx[j]) {
                std::cmp::Ordering::Greater => {
                    idx.swap(j - 1, j);
                    sign = -sign;
                }
                std::cmp::Ordering::Equal => zero = true,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        zero = true;
    }
    if zero {
        *coeff = int(0);
    }
    *slot = Some((idx, sign));
}

/// Parses an expression over the chart into a polynomial, a form, or a
/// multivector field (by the basis directions it mentions).
pub fn parse_expression(src: &str, chart: &Chart) -> Result<Parsed, ParseError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(ParseError {
            position: 0,
            message: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        chart,
    };
    let mut terms: Vec<(Rat, Term)> = Vec::new();
    let mut sign = int(1);
    if matches!(p.peek(), Some(Tok::Minus)) {
        p.bump();
        sign = int(-1);
    }
    loop {
        let t = p.parse_term()?;
        terms.push((sign.clone(), t));
        match p.peek() {
            Some(Tok::Plus) => {
                p.bump();
                sign = int(1);
            }
            Some(Tok::Minus) => {
                p.bump();
                sign = int(-1);
            }
            None => break,
            _ => return p.err("expected '+', '-', or end of expression"),
        }
    }
    // decide the result kind
    let any_form = terms.iter().any(|(_, t)| t.form_idx.is_some());
    let any_vec = terms.iter().any(|(_, t)| t.vec_idx.is_some());
    if any_form && any_vec {
        return Err(ParseError {
            position: 0,
            message: "expression mixes form and vector directions".into(),
        });
    }
    if any_form {
        let degree = terms
            .iter()
            .filter_map(|(_, t)| t.form_idx.as_ref())
            .map(|(i, _)| i.len())
            .max()
            .unwrap();
        let mut acc = PolyForm::zero(chart, degree);
        for (s, t) in terms {
            let (idx, wsign) = t.form_idx.clone().unwrap_or((vec![], int(1)));
            let c = &t.coeff * &s * &wsign;
            if LinearValue::is_zero(&c) {
                continue;
            }
            if idx.len() != degree {
                return Err(ParseError {
                    position: 0,
                    message: format!(
                        "mixed form degrees {} and {} in one expression",
                        idx.len(),
                        degree
                    ),
                });
            }
            acc = acc.add(&PolyForm::monomial(
                chart,
                &idx,
                Poly::monomial(chart, t.exps, c),
            ));
        }
        Ok(Parsed::Form(acc))
    } else if any_vec {
        let degree = terms
            .iter()
            .filter_map(|(_, t)| t.vec_idx.as_ref())
            .map(|(i, _)| i.len())
            .max()
            .unwrap();
        let mut acc = PolyMultiVec::zero(chart, degree);
        for (s, t) in terms {
            let (idx, wsign) = t.vec_idx.clone().unwrap_or((vec![], int(1)));
            let c = &t.coeff * &s * &wsign;
            if LinearValue::is_zero(&c) {
                continue;
            }
            if idx.len() != degree {
                return Err(ParseError {
                    position: 0,
                    message: "mixed multivector degrees in one expression".into(),
                });
            }
            acc = acc.add(
                &PolyMultiVec::basis(chart, &idx).scale_poly(&Poly::monomial(chart, t.exps, c)),
            );
        }
        Ok(Parsed::MultiVec(acc))
    } else {
        let mut acc = Poly::zero(chart);
        for (s, t) in terms {
            acc = &acc + &Poly::monomial(chart, t.exps, &t.coeff * &s);
        }
        Ok(Parsed::Poly(acc))
    }
}

fn print_mono(chart: &Chart, exps: &[u32]) -> String {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                chart.name(i).to_string()
            } else {
                format!("{}^{}", chart.name(i), e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn print_terms(terms: Vec<(Rat, String, String)>) -> String {
    // terms come sorted; each is (coefficient, monomial, basis-chain)
    let mut out = String::new();
    for (c, mono, chain) in terms {
        let neg = c < int(0);
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut pieces: Vec<String> = Vec::new();
        let coeff_is_one = mag == int(1);
        if !coeff_is_one || (mono.is_empty() && chain.is_empty()) {
            pieces.push(fmt_rat(&mag));
        }
        if !mono.is_empty() {
            pieces.push(mono);
        }
        if !chain.is_empty() {
            pieces.push(chain);
        }
        out.push_str(&pieces.join(" "));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn print_poly(p: &Poly) -> String {
    let chart = p.chart().clone();
    let terms = p
        .terms()
        .map(|(e, c)| (c.clone(), print_mono(&chart, e), String::new()))
        .collect();
    print_terms(terms)
}

pub fn print_form(f: &PolyForm) -> String {
    let chart = f.chart().clone();
    if f.degree() == 0 {
        return print_poly(&f.as_poly());
    }
    let mut terms = Vec::new();
    for (idx, p) in f.components() {
        let chain = idx
            .iter()
            .map(|&i| format!("d{}", chart.name(i)))
            .collect::<Vec<_>>()
            .join("^");
        for (e, c) in p.terms() {
            terms.push((c.clone(), print_mono(&chart, e), chain.clone()));
        }
    }
    print_terms(terms)
}

pub fn print_multivec(v: &PolyMultiVec) -> String {
    let chart = v.chart().clone();
    let mut terms = Vec::new();
    for (idx, p) in v.components() {
        let chain = idx
            .iter()
            .map(|&i| format!("@{}", chart.name(i)))
            .collect::<Vec<_>>()
            .join("^");
        for (e, c) in p.terms() {
            terms.push((c.clone(), print_mono(&chart, e), chain.clone()));
        }
    }
    print_terms(terms)
}

pub fn print_parsed(p: &Parsed) -> String {
    match p {
        Parsed::Poly(x) => print_poly(x),
        Parsed::Form(x) => print_form(x),
        Parsed::MultiVec(x) => print_multivec(x),
    }
}
