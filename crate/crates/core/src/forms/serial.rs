//! Text and JSON forms of monomials and elements: `"x^2 dy"` and lists of
//! `(monomial, rational)` string pairs.

use super::element::{FormElement, Monomial};
use super::model::GeometricModel;
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Serialized element: `[["x^2 dy", "3/2"], ...]`.
pub type TermList = Vec<(String, String)>;

impl GeometricModel {
    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let gens = self.generators();
        m.support()
            .map(|(i, e)| {
                if e == 1 {
                    gens[i].name.clone()
                } else {
                    format!("{}^{e}", gens[i].name)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses a word of generators, normalizing the order. Returns `None`
    /// for a word that vanishes (a repeated nilpotent generator).
    pub fn parse_monomial(&self, s: &str) -> Result<Option<(bool, Monomial)>> {
        let mut acc = Monomial::one(self.ngens());
        let mut negative = false;
        for tok in s.split_whitespace() {
            if tok == "1" && self.index_of("1").is_err() {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: u8 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                    (n, e)
                }
                None => (tok, 1),
            };
            let i = self.index_of(name)?;
            for _ in 0..exp {
                match self.mul_monomials(&acc, &Monomial::generator(self.ngens(), i)) {
                    Some((neg, m)) => {
                        negative ^= neg;
                        acc = m;
                    }
                    None => return Ok(None),
                }
            }
        }
        Ok(Some((negative, acc)))
    }

    /// Builds an element from `(monomial, coefficient)` string pairs.
    pub fn parse_terms(&self, terms: &[(String, String)]) -> Result<FormElement> {
        let mut parsed = Vec::with_capacity(terms.len());
        for (mono, coef) in terms {
            let c: Rational = coef.parse()?;
            if let Some((neg, m)) = self.parse_monomial(mono)? {
                parsed.push((m, if neg { -c } else { c }));
            }
        }
        self.element(parsed)
    }

    /// Parses `"x dy - 2 dx + 3/2"`: signed summands, each an optional
    /// rational coefficient followed by a word. Consecutive signs combine.
    pub fn parse(&self, s: &str) -> Result<FormElement> {
        let mut summands: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut cur = String::new();
        for ch in s.chars() {
            if ch == '+' || ch == '-' {
                if !cur.trim().is_empty() {
                    summands.push((negative, std::mem::take(&mut cur)));
                    negative = false;
                }
                cur.clear();
                negative ^= ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.trim().is_empty() {
            return Err(Error::Parse(format!("missing summand in `{s}`")));
        }
        summands.push((negative, cur));
        let mut terms = Vec::new();
        for (neg, summand) in summands {
            let mut words = summand.split_whitespace().peekable();
            let first = *words.peek().expect("nonempty summand");
            let mut coef = if first.parse::<Rational>().is_ok()
                && (first != "1" || summand.split_whitespace().count() > 1)
            {
                words.next();
                first.to_string()
            } else {
                "1".to_string()
            };
            if neg {
                coef.insert(0, '-');
            }
            let rest: Vec<&str> = words.collect();
            let mono = if rest.is_empty() { "1".to_string() } else { rest.join(" ") };
            terms.push((mono, coef));
        }
        self.parse_terms(&terms)
    }

    pub fn to_terms(&self, a: &FormElement) -> TermList {
        a.terms()
            .map(|(m, c)| (self.format_monomial(m), c.to_string()))
            .collect()
    }

    /// Human-readable sum, `0` for the zero element.
    pub fn format(&self, a: &FormElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        a.terms()
            .map(|(m, c)| {
                let mono = self.format_monomial(m);
                if mono == "1" {
                    c.to_string()
                } else if c.is_one() {
                    mono
                } else if *c == -Rational::one() {
                    format!("-{mono}")
                } else {
                    format!("{c} {mono}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
