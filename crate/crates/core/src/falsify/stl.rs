//! Signal temporal logic over sampled traces.
//!
//! Concrete syntax, loosest binding first:
//!
//! ```text
//! phi := phi or phi | phi and phi | not phi
//!      | always[a,b] phi | eventually[a,b] phi
//!      | y<i> <= c | y<i> >= c | ( phi )
//! ```
//!
//! `y` alone means `y0`. Interval bounds are in seconds relative to the time
//! the enclosing formula is evaluated at.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{FalsifyError, TimeSeries};

#[derive(Debug, Clone, PartialEq)]
pub enum Requirement {
    Le { signal: usize, bound: f64 },
    Ge { signal: usize, bound: f64 },
    Not(Box<Requirement>),
    And(Box<Requirement>, Box<Requirement>),
    Or(Box<Requirement>, Box<Requirement>),
    Always { from: f64, to: f64, body: Box<Requirement> },
    Eventually { from: f64, to: f64, body: Box<Requirement> },
}

use Requirement::*;

impl Requirement {
    pub fn not(self) -> Self {
        Not(Box::new(self))
    }

    pub fn and(self, other: Self) -> Self {
        And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Self) -> Self {
        Or(Box::new(self), Box::new(other))
    }

    pub fn always(from: f64, to: f64, body: Self) -> Self {
        Always { from, to, body: Box::new(body) }
    }

    pub fn eventually(from: f64, to: f64, body: Self) -> Self {
        Eventually { from, to, body: Box::new(body) }
    }

    /// `always[0,horizon] (-limit <= y <= limit)` on one signal.
    pub fn bounded_magnitude(signal: usize, limit: f64, horizon: f64) -> Self {
        Self::always(0.0, horizon, Le { signal, bound: limit }.and(Ge { signal, bound: -limit }))
    }

    /// Seconds of trace the formula needs beyond its evaluation time.
    pub fn horizon(&self) -> f64 {
        match self {
            Le { .. } | Ge { .. } => 0.0,
            Not(a) => a.horizon(),
            And(a, b) | Or(a, b) => a.horizon().max(b.horizon()),
            Always { to, body, .. } | Eventually { to, body, .. } => to + body.horizon(),
        }
    }

    /// Largest signal index referenced.
    pub fn max_signal(&self) -> usize {
        match self {
            Le { signal, .. } | Ge { signal, .. } => *signal,
            Not(a) => a.max_signal(),
            And(a, b) | Or(a, b) => a.max_signal().max(b.max_signal()),
            Always { body, .. } | Eventually { body, .. } => body.max_signal(),
        }
    }

    /// Checks bounds are finite and every interval satisfies `0 <= a <= b`.
    pub fn validate(&self) -> Result<(), FalsifyError> {
        match self {
            Le { bound, .. } | Ge { bound, .. } if !bound.is_finite() => {
                Err(FalsifyError::Requirement(format!("non-finite bound {bound}")))
            }
            Le { .. } | Ge { .. } => Ok(()),
            Not(a) => a.validate(),
            And(a, b) | Or(a, b) => a.validate().and(b.validate()),
            Always { from, to, body } | Eventually { from, to, body } => {
                if !(from.is_finite() && to.is_finite() && 0.0 <= *from && from <= to) {
                    return Err(FalsifyError::Requirement(format!("bad interval [{from}, {to}]")));
                }
                body.validate()
            }
        }
    }

    /// Validates the formula and checks it fits in a trace of length `horizon`.
    pub fn validate_for(&self, horizon: f64) -> Result<(), FalsifyError> {
        self.validate()?;
        if self.horizon() > horizon + 1e-9 {
            return Err(FalsifyError::Requirement(format!(
                "formula horizon {} exceeds signal horizon {horizon}",
                self.horizon()
            )));
        }
        Ok(())
    }

    /// Sample offsets covered by `[from, to]` at the given period.
    fn window(from: f64, to: f64, period: f64) -> (usize, usize) {
        let lo = (from / period - 1e-9).ceil().max(0.0) as usize;
        let hi = (to / period + 1e-9).floor().max(0.0) as usize;
        (lo, hi.max(lo))
    }

    fn sample_horizon(&self, period: f64) -> usize {
        match self {
            Le { .. } | Ge { .. } => 0,
            Not(a) => a.sample_horizon(period),
            And(a, b) | Or(a, b) => a.sample_horizon(period).max(b.sample_horizon(period)),
            Always { from, to, body } | Eventually { from, to, body } => {
                Self::window(*from, *to, period).1 + body.sample_horizon(period)
            }
        }
    }

    /// Robustness at every sample where the formula is fully defined.
    fn signal(&self, trace: &TimeSeries, n: usize) -> Vec<f64> {
        match self {
            Le { signal, bound } => trace.values[..n].iter().map(|v| bound - v[*signal]).collect(),
            Ge { signal, bound } => trace.values[..n].iter().map(|v| v[*signal] - bound).collect(),
            Not(a) => a.signal(trace, n).into_iter().map(|r| -r).collect(),
            And(a, b) => a.signal(trace, n).into_iter().zip(b.signal(trace, n)).map(|(x, y)| x.min(y)).collect(),
            Or(a, b) => a.signal(trace, n).into_iter().zip(b.signal(trace, n)).map(|(x, y)| x.max(y)).collect(),
            Always { from, to, body } | Eventually { from, to, body } => {
                let (lo, hi) = Self::window(*from, *to, trace.period);
                let inner = body.signal(trace, n + hi);
                let pick: fn(f64, f64) -> f64 = if matches!(self, Always { .. }) { f64::min } else { f64::max };
                (0..n).map(|k| inner[k + lo..=k + hi].iter().copied().reduce(pick).unwrap()).collect()
            }
        }
    }

    /// Quantitative satisfaction at time zero: positive means satisfied,
    /// negative means violated.
    pub fn robustness(&self, trace: &TimeSeries) -> Result<f64, FalsifyError> {
        if trace.is_empty() {
            return Err(FalsifyError::Horizon { needed: 1, available: 0 });
        }
        if self.max_signal() >= trace.channels() {
            return Err(FalsifyError::Requirement(format!(
                "signal y{} not in a {}-channel trace",
                self.max_signal(),
                trace.channels()
            )));
        }
        let needed = self.sample_horizon(trace.period) + 1;
        if needed > trace.len() {
            return Err(FalsifyError::Horizon { needed, available: trace.len() });
        }
        Ok(self.signal(trace, 1)[0])
    }
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Le { signal, bound } => write!(f, "y{signal} <= {bound}"),
            Ge { signal, bound } => write!(f, "y{signal} >= {bound}"),
            Not(a) => write!(f, "not ({a})"),
            And(a, b) => write!(f, "({a}) and ({b})"),
            Or(a, b) => write!(f, "({a}) or ({b})"),
            Always { from, to, body } => write!(f, "always[{from},{to}] ({body})"),
            Eventually { from, to, body } => write!(f, "eventually[{from},{to}] ({body})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Word(String),
    Num(f64),
    Le,
    Ge,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn tokenize(s: &str) -> Result<Vec<Token>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '(' | ')' | '[' | ']' | ',' => {
                out.push(match c {
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    '[' => Token::LBracket,
                    ']' => Token::RBracket,
                    _ => Token::Comma,
                });
                i += 1;
            }
            '<' | '>' if chars.get(i + 1) == Some(&'=') => {
                out.push(if c == '<' { Token::Le } else { Token::Ge });
                i += 2;
            }
            _ if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(Token::Word(chars[start..i].iter().collect()));
            }
            _ if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' => {
                let start = i;
                i += 1;
                while i < chars.len() {
                    let d = chars[i];
                    let exp_sign = (d == '-' || d == '+') && matches!(chars[i - 1], 'e' | 'E');
                    if d.is_ascii_digit() || d == '.' || d == 'e' || d == 'E' || exp_sign {
                        i += 1;
                    } else {
                        break;
                    }
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Token::Num(text.parse().map_err(|_| format!("bad number '{text}'"))?));
            }
            _ => return Err(format!("unexpected character '{c}'")),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token) -> Result<(), String> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            other => Err(format!("expected {want:?}, found {other:?}")),
        }
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Token::Word(w)) if w == kw)
    }

    fn or(&mut self) -> Result<Requirement, String> {
        let mut lhs = self.and()?;
        while self.keyword("or") {
            self.pos += 1;
            lhs = lhs.or(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Requirement, String> {
        let mut lhs = self.unary()?;
        while self.keyword("and") {
            self.pos += 1;
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn number(&mut self) -> Result<f64, String> {
        match self.next() {
            Some(Token::Num(x)) => Ok(x),
            other => Err(format!("expected a number, found {other:?}")),
        }
    }

    fn unary(&mut self) -> Result<Requirement, String> {
        match self.next() {
            Some(Token::LParen) => {
                let inner = self.or()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Some(Token::Word(w)) if w == "not" => Ok(self.unary()?.not()),
            Some(Token::Word(w)) if w == "always" || w == "eventually" => {
                self.expect(Token::LBracket)?;
                let from = self.number()?;
                self.expect(Token::Comma)?;
                let to = self.number()?;
                self.expect(Token::RBracket)?;
                let body = self.unary()?;
                Ok(if w == "always" {
                    Requirement::always(from, to, body)
                } else {
                    Requirement::eventually(from, to, body)
                })
            }
            Some(Token::Word(w)) if w.starts_with('y') => {
                let signal = match &w[1..] {
                    "" => 0,
                    digits => digits.parse().map_err(|_| format!("bad signal name '{w}'"))?,
                };
                let op = self.next();
                let bound = self.number()?;
                match op {
                    Some(Token::Le) => Ok(Le { signal, bound }),
                    Some(Token::Ge) => Ok(Ge { signal, bound }),
                    other => Err(format!("expected <= or >=, found {other:?}")),
                }
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

impl FromStr for Requirement {
    type Err = FalsifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { tokens: tokenize(s).map_err(FalsifyError::Requirement)?, pos: 0 };
        let req = p.or().map_err(FalsifyError::Requirement)?;
        if p.pos != p.tokens.len() {
            return Err(FalsifyError::Requirement(format!("trailing input after token {}", p.pos)));
        }
        req.validate()?;
        Ok(req)
    }
}

impl Serialize for Requirement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Requirement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
