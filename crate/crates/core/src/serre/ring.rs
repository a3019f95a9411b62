use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Rational, SparseVec};

/// A homogeneous cohomology class: coordinates in the degree's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class {
    pub degree: u32,
    pub coords: SparseVec,
}

impl Class {
    pub fn zero(degree: u32) -> Self {
        Class { degree, coords: SparseVec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn scaled(&self, c: &Rational) -> Class {
        Class { degree: self.degree, coords: self.coords.scaled(c) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpec {
    pub left: String,
    pub right: String,
    /// `(basis label, coefficient)` pairs; empty means zero.
    pub value: Vec<(String, String)>,
}

/// Serialized ring: either a free graded-commutative algebra cut off above
/// `top` (and modulo monomial relations), or an explicit basis with a
/// multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RingSpec {
    Free {
        name: String,
        generators: Vec<GeneratorSpec>,
        top: u32,
        #[serde(default)]
        relations: Vec<String>,
    },
    Table {
        name: String,
        /// Basis labels per degree; `basis[0][0]` is the unit.
        basis: Vec<Vec<String>>,
        #[serde(default)]
        products: Vec<ProductSpec>,
    },
}

type Mono = Vec<u32>;

/// `(degree, index)` of a basis element.
type Slot = (u32, usize);

#[derive(Clone, Debug)]
enum Mult {
    Free {
        gens: Vec<(String, u32)>,
        monos: Vec<Vec<Mono>>,
        index: Vec<BTreeMap<Mono, usize>>,
    },
    /// Products of non-unit basis elements, both orders stored.
    Table(BTreeMap<(Slot, Slot), SparseVec>),
}

/// Finite-dimensional graded-commutative ℚ-algebra with a basis in each
/// degree `0..=top`.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    name: String,
    basis: Vec<Vec<String>>,
    mult: Mult,
    spec: RingSpec,
}

/// Result of checking the ring axioms on basis triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub unit: bool,
    pub commutativity_failures: usize,
    pub associativity_failures: usize,
    pub triples_checked: usize,
    /// All basis triples were checked, not only those built from generators.
    pub exhaustive: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.unit && self.commutativity_failures == 0 && self.associativity_failures == 0
    }
}

const EXHAUSTIVE_LIMIT: usize = 48;

fn koszul(a: &Mono, b: &Mono, degs: &[u32]) -> bool {
    // moving each factor of b left past the larger-index factors of a
    let mut odd = false;
    for (i, &bi) in b.iter().enumerate() {
        if bi == 0 || degs[i].is_multiple_of(2) {
            continue;
        }
        for (j, &aj) in a.iter().enumerate().skip(i + 1) {
            if aj % 2 == 1 && degs[j] % 2 == 1 && bi % 2 == 1 {
                odd = !odd;
            }
        }
    }
    odd
}

fn mono_label(gens: &[(String, u32)], m: &Mono) -> String {
    let mut s = String::new();
    for (k, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        s.push_str(&gens[k].0);
        if e > 1 {
            s.push_str(&format!("^{e}"));
        }
    }
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

fn enumerate_monos(gens: &[(String, u32)], top: u32, relations: &[Mono]) -> Vec<Vec<Mono>> {
    let mut out = vec![Vec::new(); top as usize + 1];
    let mut cur = vec![0u32; gens.len()];
    fn rec(k: usize, deg: u32, top: u32, gens: &[(String, u32)], cur: &mut Mono, rel: &[Mono], out: &mut Vec<Vec<Mono>>) {
        if k == gens.len() {
            let divisible = rel.iter().any(|r| r.iter().zip(cur.iter()).all(|(a, b)| a <= b));
            if !divisible {
                out[deg as usize].push(cur.clone());
            }
            return;
        }
        let d = gens[k].1;
        let max_e = if d % 2 == 1 { 1 } else { (top - deg).checked_div(d).unwrap_or(0) };
        for e in 0..=max_e {
            if deg + e * d > top {
                break;
            }
            cur[k] = e;
            rec(k + 1, deg + e * d, top, gens, cur, rel, out);
        }
        cur[k] = 0;
    }
    rec(0, 0, top, gens, &mut cur, relations, &mut out);
    for ms in &mut out {
        // graded-lexicographic with earlier generators first
        ms.sort_by(|a, b| b.cmp(a));
    }
    out
}

impl CohomologyRing {
    pub fn from_spec(spec: RingSpec) -> Result<Self> {
        match &spec {
            RingSpec::Free { name, generators, top, relations } => {
                let gens: Vec<(String, u32)> = generators.iter().map(|g| (g.name.clone(), g.degree)).collect();
                for (i, (n, d)) in gens.iter().enumerate() {
                    if *d == 0 {
                        return Err(Error::Ring(format!("generator `{n}` has degree 0")));
                    }
                    if n.is_empty() || n.chars().any(|c| c.is_whitespace() || "+-^*/".contains(c)) {
                        return Err(Error::Ring(format!("invalid generator name `{n}`")));
                    }
                    if gens[..i].iter().any(|(m, _)| m == n) {
                        return Err(Error::Ring(format!("duplicate generator `{n}`")));
                    }
                }
                let mut rel = Vec::new();
                for r in relations {
                    let terms = parse_terms(r, &|s| atom_of(&gens, s))?;
                    let [(c, word)] = terms.as_slice() else {
                        return Err(Error::Ring(format!("relation `{r}` is not a single monomial")));
                    };
                    if c.is_zero() {
                        continue;
                    }
                    let mut m = vec![0; gens.len()];
                    for k in word {
                        m[*k] += 1;
                    }
                    rel.push(m);
                }
                let monos = enumerate_monos(&gens, *top, &rel);
                let index = monos
                    .iter()
                    .map(|ms| ms.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
                    .collect();
                let basis = monos.iter().map(|ms| ms.iter().map(|m| mono_label(&gens, m)).collect()).collect();
                Ok(CohomologyRing { name: name.clone(), basis, mult: Mult::Free { gens, monos, index }, spec })
            }
            RingSpec::Table { name, basis, products } => {
                if basis.first().map(|b| b.len()) != Some(1) {
                    return Err(Error::Ring("degree 0 must have exactly one basis element, the unit".into()));
                }
                let mut where_: BTreeMap<&str, (u32, usize)> = BTreeMap::new();
                for (d, labels) in basis.iter().enumerate() {
                    for (i, l) in labels.iter().enumerate() {
                        if where_.insert(l.as_str(), (d as u32, i)).is_some() {
                            return Err(Error::Ring(format!("duplicate basis label `{l}`")));
                        }
                    }
                }
                let find = |l: &str| {
                    where_.get(l).copied().ok_or_else(|| Error::Ring(format!("unknown basis label `{l}`")))
                };
                let top = basis.len() as u32 - 1;
                let mut table = BTreeMap::new();
                for p in products {
                    let (a, b) = (find(&p.left)?, find(&p.right)?);
                    if a.0 == 0 || b.0 == 0 {
                        return Err(Error::Ring("products with the unit are implicit".into()));
                    }
                    let deg = a.0 + b.0;
                    let mut pairs = Vec::new();
                    for (l, c) in &p.value {
                        let t = find(l)?;
                        if t.0 != deg {
                            return Err(Error::Ring(format!("{} ∪ {} has a term `{l}` of degree {}", p.left, p.right, t.0)));
                        }
                        pairs.push((t.1, c.parse::<Rational>()?));
                    }
                    let v = SparseVec::from_pairs(pairs);
                    if deg > top && !v.is_zero() {
                        return Err(Error::Ring(format!("{} ∪ {} lies above the top degree", p.left, p.right)));
                    }
                    let swapped = if (a.0 * b.0) % 2 == 1 { v.scaled(&-Rational::one()) } else { v.clone() };
                    for (key, val) in [((a, b), v), ((b, a), swapped)] {
                        if let Some(old) = table.get(&key) {
                            if *old != val {
                                return Err(Error::Ring(format!(
                                    "inconsistent products for {} ∪ {}",
                                    p.left, p.right
                                )));
                            }
                        }
                        table.insert(key, val);
                    }
                }
                Ok(CohomologyRing { name: name.clone(), basis: basis.clone(), mult: Mult::Table(table), spec })
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_spec(serde_json::from_str(text)?)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    /// Exterior algebra on `e1..en` in degree 1.
    pub fn torus(n: usize) -> Self {
        Self::from_spec(RingSpec::Free {
            name: format!("T{n}"),
            generators: (1..=n).map(|i| GeneratorSpec { name: format!("e{i}"), degree: 1 }).collect(),
            top: n as u32,
            relations: Vec::new(),
        })
        .expect("torus ring")
    }

    /// `ℚ[vol]/(vol²)` with `|vol| = n`.
    pub fn sphere(n: u32) -> Self {
        Self::from_spec(RingSpec::Free {
            name: format!("S{n}"),
            generators: vec![GeneratorSpec { name: "vol".into(), degree: n }],
            top: n,
            relations: vec!["vol^2".into()],
        })
        .expect("sphere ring")
    }

    pub fn point() -> Self {
        Self::from_spec(RingSpec::Free { name: "pt".into(), generators: Vec::new(), top: 0, relations: Vec::new() })
            .expect("point ring")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn top(&self) -> u32 {
        self.basis.len() as u32 - 1
    }

    /// `dim H^k`, zero outside `0..=top`.
    pub fn dim(&self, k: i64) -> usize {
        if k < 0 {
            return 0;
        }
        self.basis.get(k as usize).map_or(0, |b| b.len())
    }

    pub fn basis(&self, k: u32) -> &[String] {
        self.basis.get(k as usize).map_or(&[], |b| b.as_slice())
    }

    pub fn total_dim(&self) -> usize {
        self.basis.iter().map(|b| b.len()).sum()
    }

    pub fn unit(&self) -> Class {
        Class { degree: 0, coords: SparseVec::unit(0) }
    }

    pub fn basis_class(&self, k: u32, i: usize) -> Class {
        Class { degree: k, coords: SparseVec::unit(i) }
    }

    /// `x_i ∪ y_j` for basis elements of degrees `a` and `b`.
    pub fn cup_basis(&self, a: u32, i: usize, b: u32, j: usize) -> SparseVec {
        let deg = a + b;
        if deg > self.top() {
            return SparseVec::new();
        }
        if a == 0 {
            return SparseVec::unit(j);
        }
        if b == 0 {
            return SparseVec::unit(i);
        }
        match &self.mult {
            Mult::Free { gens, monos, index } => {
                let (x, y) = (&monos[a as usize][i], &monos[b as usize][j]);
                let degs: Vec<u32> = gens.iter().map(|g| g.1).collect();
                let mut prod = Vec::with_capacity(x.len());
                for k in 0..x.len() {
                    let e = x[k] + y[k];
                    if degs[k] % 2 == 1 && e > 1 {
                        return SparseVec::new();
                    }
                    prod.push(e);
                }
                let Some(&pos) = index[deg as usize].get(&prod) else {
                    return SparseVec::new();
                };
                let c = if koszul(x, y, &degs) { -Rational::one() } else { Rational::one() };
                SparseVec::from_pairs([(pos, c)])
            }
            Mult::Table(t) => t.get(&((a, i), (b, j))).cloned().unwrap_or_default(),
        }
    }

    pub fn cup(&self, x: &Class, y: &Class) -> Class {
        let deg = x.degree + y.degree;
        let mut out = SparseVec::new();
        if deg <= self.top() {
            for (i, a) in x.coords.iter() {
                for (j, b) in y.coords.iter() {
                    out.axpy(&(a * b), &self.cup_basis(x.degree, *i, y.degree, *j));
                }
            }
        }
        Class { degree: deg, coords: out }
    }

    /// Parses a homogeneous class such as `e1e2e3e4`, `2 vol` or
    /// `e1 e2 - 1/2 e3 e4`. Atoms are generator names for free rings and basis
    /// labels for table rings; juxtaposition is the cup product.
    pub fn parse_class(&self, text: &str, degree: Option<u32>) -> Result<Class> {
        let atoms: Vec<(String, u32, usize)> = match &self.mult {
            Mult::Free { gens, .. } => gens
                .iter()
                .enumerate()
                .map(|(k, (n, d))| {
                    let mut m = vec![0; gens.len()];
                    m[k] = 1;
                    let pos = self.index_of(*d, &m).unwrap_or(usize::MAX);
                    (n.clone(), *d, pos)
                })
                .collect(),
            Mult::Table(_) => self
                .basis
                .iter()
                .enumerate()
                .flat_map(|(d, ls)| ls.iter().enumerate().map(move |(i, l)| (l.clone(), d as u32, i)))
                .collect(),
        };
        let names: Vec<(String, u32)> = atoms.iter().map(|(n, d, _)| (n.clone(), *d)).collect();
        let terms = parse_terms(text, &|s| atom_of(&names, s))?;
        let mut total: Option<Class> = None;
        for (c, word) in terms {
            let mut cls = self.unit();
            for k in word {
                let (_, d, pos) = &atoms[k];
                let g = if *pos == usize::MAX { Class::zero(*d) } else { self.basis_class(*d, *pos) };
                cls = self.cup(&cls, &g);
            }
            let cls = cls.scaled(&c);
            total = Some(match total {
                None => cls,
                Some(t) if t.degree == cls.degree => Class { degree: t.degree, coords: t.coords.add(&cls.coords) },
                Some(t) => {
                    return Err(Error::Ring(format!(
                        "`{text}` mixes degrees {} and {}",
                        t.degree, cls.degree
                    )))
                }
            });
        }
        let out = match (total, degree) {
            (None, Some(d)) => Class::zero(d),
            (None, None) => return Err(Error::Ring(format!("`{text}` has no degree"))),
            (Some(t), Some(d)) if t.degree != d => {
                return Err(Error::Ring(format!("`{text}` has degree {}, expected {d}", t.degree)));
            }
            (Some(t), _) => t,
        };
        Ok(out)
    }

    fn index_of(&self, deg: u32, m: &Mono) -> Option<usize> {
        match &self.mult {
            Mult::Free { index, .. } => index.get(deg as usize)?.get(m).copied(),
            Mult::Table(_) => None,
        }
    }

    pub fn format_class(&self, x: &Class) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let labels = self.basis(x.degree);
        let mut s = String::new();
        for (k, (i, c)) in x.coords.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if !a.is_one() {
                s.push_str(&format!("{a} "));
            }
            s.push_str(&labels[*i]);
        }
        s
    }

    /// Graded commutativity, associativity and the unit on basis triples.
    /// Rings with more than 48 basis elements are checked on triples of
    /// generators (free rings) or degree ≤ 1 elements (tables).
    pub fn verify_axioms(&self) -> AxiomReport {
        let all: Vec<(u32, usize)> = self
            .basis
            .iter()
            .enumerate()
            .flat_map(|(d, b)| (0..b.len()).map(move |i| (d as u32, i)))
            .collect();
        let exhaustive = all.len() <= EXHAUSTIVE_LIMIT;
        let elems: Vec<(u32, usize)> = if exhaustive {
            all.clone()
        } else {
            match &self.mult {
                Mult::Free { gens, .. } => {
                    let mut v = vec![(0, 0)];
                    for (k, (_, d)) in gens.iter().enumerate() {
                        let mut m = vec![0; gens.len()];
                        m[k] = 1;
                        if let Some(p) = self.index_of(*d, &m) {
                            v.push((*d, p));
                        }
                    }
                    v
                }
                Mult::Table(_) => all.iter().copied().filter(|(d, _)| *d <= 1).collect(),
            }
        };
        let unit = all.iter().all(|&(d, i)| {
            self.cup_basis(0, 0, d, i) == SparseVec::unit(i) && self.cup_basis(d, i, 0, 0) == SparseVec::unit(i)
        });
        let mut comm = 0;
        for &(a, i) in &elems {
            for &(b, j) in &elems {
                let s = if (a * b) % 2 == 1 { -Rational::one() } else { Rational::one() };
                if self.cup_basis(a, i, b, j) != self.cup_basis(b, j, a, i).scaled(&s) {
                    comm += 1;
                }
            }
        }
        let mut assoc = 0;
        let mut triples = 0;
        for &(a, i) in &elems {
            for &(b, j) in &elems {
                let xy = Class { degree: a + b, coords: self.cup_basis(a, i, b, j) };
                for &(c, k) in &elems {
                    triples += 1;
                    let z = self.basis_class(c, k);
                    let yz = Class { degree: b + c, coords: self.cup_basis(b, j, c, k) };
                    let left = self.cup(&xy, &z);
                    let right = self.cup(&self.basis_class(a, i), &yz);
                    if left != right {
                        assoc += 1;
                    }
                }
            }
        }
        AxiomReport { unit, commutativity_failures: comm, associativity_failures: assoc, triples_checked: triples, exhaustive }
    }
}

fn atom_of(names: &[(String, u32)], s: &str) -> Option<(usize, usize)> {
    // longest generator name that prefixes `s`
    names
        .iter()
        .enumerate()
        .filter(|(_, (n, _))| s.starts_with(n.as_str()))
        .max_by_key(|(_, (n, _))| n.len())
        .map(|(k, (n, _))| (k, n.len()))
}

/// Splits `text` into signed terms `(coefficient, atoms in order)`.
fn parse_terms(text: &str, atom: &dyn Fn(&str) -> Option<(usize, usize)>) -> Result<Vec<(Rational, Vec<usize>)>> {
    let err = |m: String| Error::Parse(format!("{m} in `{text}`"));
    let mut out: Vec<(Rational, Vec<usize>)> = Vec::new();
    let mut rest = text.trim();
    if rest == "0" {
        return Ok(out);
    }
    let mut sign = Rational::one();
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
            continue;
        }
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
            continue;
        }
        let mut coef = sign.clone();
        let num_len = rest.find(|c: char| !(c.is_ascii_digit() || c == '/')).unwrap_or(rest.len());
        let starts_atom = atom(rest).is_some();
        if num_len > 0 && !starts_atom {
            coef = &coef * &rest[..num_len].parse::<Rational>()?;
            rest = rest[num_len..].trim_start();
            rest = rest.strip_prefix('*').unwrap_or(rest).trim_start();
        }
        let mut word = Vec::new();
        loop {
            if rest.is_empty() || rest.starts_with('+') || rest.starts_with('-') {
                break;
            }
            let (k, len) = atom(rest).ok_or_else(|| err(format!("unknown symbol at `{rest}`")))?;
            rest = &rest[len..];
            let mut e = 1u32;
            if let Some(r) = rest.strip_prefix('^') {
                let n = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                e = r[..n].parse().map_err(|_| err("bad exponent".into()))?;
                rest = &r[n..];
            }
            word.extend(std::iter::repeat_n(k, e as usize));
            rest = rest.trim_start();
            rest = rest.strip_prefix('*').unwrap_or(rest).trim_start();
        }
        out.push((coef, word));
        sign = Rational::one();
    }
    Ok(out)
}
