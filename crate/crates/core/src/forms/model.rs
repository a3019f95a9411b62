use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::element::{FormElement, Monomial};
use super::generator::{Generator, Parity};
use super::vector::VectorField;
use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// Polynomial-coefficient forms on ℝᵐ.
    Polynomial,
    /// Chevalley-Eilenberg algebra of a finite-dimensional (super) Lie algebra.
    Ce,
    /// CE generators together with odd coordinates `θ` whose differentials
    /// are the odd CE generators.
    SuperTorus,
}

/// A free graded-commutative algebra with a differential given on generators.
#[derive(Clone, Debug)]
pub struct GeometricModel {
    kind: ModelKind,
    generators: Vec<Generator>,
    differential: Vec<FormElement>,
    truncation: Option<u32>,
    names: HashMap<String, usize>,
    pbit: Vec<u8>,
    sbit: Vec<u8>,
    nilpotent: Vec<bool>,
}

impl GeometricModel {
    /// Builds a model and checks `d² = 0` on every generator.
    ///
    /// `differential[i]` is `d` of generator `i`; it must have degree one
    /// higher and, when a truncation is set, the same weight.
    pub fn new(
        kind: ModelKind,
        generators: Vec<Generator>,
        differential: Vec<FormElement>,
        truncation: Option<u32>,
    ) -> Result<Self> {
        if differential.len() != generators.len() {
            return Err(Error::Model(format!(
                "{} generators but {} differentials",
                generators.len(),
                differential.len()
            )));
        }
        let mut names = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if g.name.is_empty() || g.name.contains(char::is_whitespace) || g.name.contains('^') {
                return Err(Error::Model(format!("invalid generator name `{}`", g.name)));
            }
            if names.insert(g.name.clone(), i).is_some() {
                return Err(Error::Model(format!("duplicate generator `{}`", g.name)));
            }
        }
        let model = GeometricModel {
            kind,
            pbit: generators.iter().map(|g| g.degree & 1).collect(),
            sbit: generators.iter().map(|g| g.parity.bit()).collect(),
            nilpotent: generators.iter().map(|g| g.anticommutes_with_itself()).collect(),
            generators,
            differential,
            truncation,
            names,
        };
        for (i, dg) in model.differential.iter().enumerate() {
            let g = &model.generators[i];
            if !dg.is_zero() && dg.degree() != g.degree as usize + 1 {
                return Err(Error::Model(format!("d{} has degree {}", g.name, dg.degree())));
            }
            for (m, _) in dg.terms() {
                if m.len() != model.ngens() {
                    return Err(Error::Model(format!("d{} has a foreign monomial", g.name)));
                }
                if model.truncation.is_some() && model.weight(m) != g.weight {
                    return Err(Error::Model(format!("d{} does not preserve weight", g.name)));
                }
                if model.parity(m) != g.parity {
                    return Err(Error::Model(format!("d{} does not preserve parity", g.name)));
                }
            }
        }
        for i in 0..model.ngens() {
            let dd = model.differential(&model.differential[i])?;
            if !dd.is_zero() {
                return Err(Error::NotADifferential {
                    generator: model.generators[i].name.clone(),
                    residual: model.format(&dd),
                });
            }
        }
        Ok(model)
    }

    /// Forms on ℝᵐ with coordinates `names` and differentials `d<name>`,
    /// truncated at total weight `truncation` (coordinates and their
    /// differentials have weight one).
    pub fn polynomial(coordinates: &[&str], truncation: u32) -> Result<Self> {
        let m = coordinates.len();
        let n = 2 * m;
        let mut gens = Vec::with_capacity(n);
        for c in coordinates {
            gens.push(Generator::new(*c, 0, Parity::Even));
        }
        for c in coordinates {
            gens.push(Generator::new(format!("d{c}"), 1, Parity::Even));
        }
        let mut diff = Vec::with_capacity(n);
        for i in 0..m {
            let mut e = FormElement::zero(1);
            e.add_term(Monomial::generator(n, m + i), &Rational::one());
            diff.push(e);
        }
        for _ in 0..m {
            diff.push(FormElement::zero(2));
        }
        Self::new(ModelKind::Polynomial, gens, diff, Some(truncation))
    }

    /// CE model of a Lie superalgebra with basis `basis` (names of the dual
    /// generators and parities) and brackets `[X_i, X_j] = Σ c X_k` given as
    /// `(i, j, k, c)`. Entries for `(j, i)` are implied by graded
    /// antisymmetry; `d² = 0` holds iff the super Jacobi identity does.
    pub fn ce_from_structure_constants(
        basis: &[(&str, Parity)],
        constants: &[(usize, usize, usize, Rational)],
    ) -> Result<Self> {
        let n = basis.len();
        let gens: Vec<Generator> =
            basis.iter().map(|(name, p)| Generator::new(*name, 1, *p)).collect();
        let mut table: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        for (i, j, k, c) in constants {
            let (i, j, k) = (*i, *j, *k);
            if i >= n || j >= n || k >= n {
                return Err(Error::IndexOutOfRange { index: i.max(j).max(k), dim: n });
            }
            if c.is_zero() {
                continue;
            }
            let (si, sj, sk) = (basis[i].1, basis[j].1, basis[k].1);
            if si + sj != sk {
                return Err(Error::Model(format!(
                    "bracket [{},{}] -> {} violates parity",
                    basis[i].0, basis[j].0, basis[k].0
                )));
            }
            let swap = if si.is_odd() && sj.is_odd() { c.clone() } else { -c };
            for (key, val) in [((i, j, k), c.clone()), ((j, i, k), swap)] {
                if let Some(prev) = table.get(&key) {
                    if *prev != val {
                        return Err(Error::Model(format!(
                            "structure constants for [{},{}] are not graded antisymmetric",
                            basis[key.0].0, basis[key.1].0
                        )));
                    }
                }
                table.insert(key, val);
            }
        }
        let mut diff: Vec<FormElement> = (0..n).map(|_| FormElement::zero(2)).collect();
        let half = Rational::new(1, 2);
        for ((i, j), k, c) in table.iter().map(|((i, j, k), c)| ((*i, *j), *k, c)) {
            if i > j {
                continue;
            }
            // ι_{X_j} ι_{X_i} (g^i g^j) = 1 for i < j and 2 for i = j (odd)
            let both_odd = basis[i].1.is_odd() && basis[j].1.is_odd();
            let coef = match (i == j, both_odd) {
                (true, true) => c * &half,
                (true, false) => continue,
                (false, true) => c.clone(),
                (false, false) => -c,
            };
            let mut e = vec![0u8; n];
            e[i] += 1;
            e[j] += 1;
            diff[k].add_term(Monomial::from_exponents(e), &coef);
        }
        Self::new(ModelKind::Ce, gens, diff, None)
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn generator_differential(&self, i: usize) -> &FormElement {
        &self.differential[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .get(name)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))
    }

    pub fn degree(&self, m: &Monomial) -> usize {
        m.support().map(|(i, e)| e as usize * self.generators[i].degree as usize).sum()
    }

    pub fn weight(&self, m: &Monomial) -> u32 {
        m.support().map(|(i, e)| e as u32 * self.generators[i].weight).sum()
    }

    pub fn parity(&self, m: &Monomial) -> Parity {
        Parity::from_bit(m.support().fold(0u8, |acc, (i, e)| acc ^ (e & self.sbit[i])))
    }

    /// Parity of a nonzero element if all its terms agree.
    pub fn element_parity(&self, a: &FormElement) -> Option<Parity> {
        let mut it = a.terms().map(|(m, _)| self.parity(m));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    fn check_weight(&self, m: &Monomial) -> Result<()> {
        if let Some(limit) = self.truncation {
            let w = self.weight(m);
            if w > limit {
                return Err(Error::TruncationOverflow { weight: w, limit });
            }
        }
        Ok(())
    }

    pub fn one(&self) -> FormElement {
        self.constant(Rational::one())
    }

    pub fn constant(&self, c: Rational) -> FormElement {
        let mut e = FormElement::zero(0);
        e.add_term(Monomial::one(self.ngens()), &c);
        e
    }

    pub fn generator(&self, name: &str) -> Result<FormElement> {
        let i = self.index_of(name)?;
        Ok(self.generator_at(i))
    }

    pub fn generator_at(&self, i: usize) -> FormElement {
        let mut e = FormElement::zero(self.generators[i].degree as usize);
        e.add_term(Monomial::generator(self.ngens(), i), &Rational::one());
        e
    }

    /// Element from monomials and coefficients; rejects mixed degrees.
    pub fn element(&self, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<FormElement> {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        let mut degree = None;
        for (m, c) in terms {
            if m.len() != self.ngens() {
                return Err(Error::Dimension(format!(
                    "monomial over {} generators in a model with {}",
                    m.len(),
                    self.ngens()
                )));
            }
            self.check_weight(&m)?;
            let dm = self.degree(&m);
            match degree {
                None => degree = Some(dm),
                Some(d0) if d0 != dm => {
                    return Err(Error::MixedDegree(format!("degrees {d0} and {dm} in one element")))
                }
                _ => {}
            }
            *map.entry(m).or_default() += &c;
        }
        Ok(FormElement::from_map(degree.unwrap_or(0), map))
    }

    /// Product of two normalized monomials: `None` when it vanishes,
    /// otherwise `(negative, normalized)`.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let (ea, eb) = (a.exponents(), b.exponents());
        let mut out = a.clone();
        let mut sign = 0u8;
        let (mut ps, mut ss) = (0u8, 0u8);
        for i in (0..ea.len()).rev() {
            let bi = eb[i];
            if bi != 0 {
                if bi & 1 == 1 {
                    sign ^= (self.pbit[i] & ps) ^ (self.sbit[i] & ss);
                }
                let o = &mut out.exponents_mut()[i];
                *o = o.checked_add(bi).expect("exponent overflow");
                if self.nilpotent[i] && *o > 1 {
                    return None;
                }
            }
            if ea[i] & 1 == 1 {
                ps ^= self.pbit[i];
                ss ^= self.sbit[i];
            }
        }
        Some((sign == 1, out))
    }

    fn push(&self, out: &mut FormElement, m: Monomial, c: &Rational, negative: bool) -> Result<()> {
        self.check_weight(&m)?;
        if negative {
            out.add_term(m, &-c);
        } else {
            out.add_term(m, c);
        }
        Ok(())
    }

    /// Graded-commutative product.
    pub fn wedge(&self, a: &FormElement, b: &FormElement) -> Result<FormElement> {
        let mut out = FormElement::zero(a.degree() + b.degree());
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((neg, m)) = self.mul_monomials(ma, mb) {
                    self.push(&mut out, m, &(ca * cb), neg)?;
                }
            }
        }
        Ok(out)
    }

    pub fn wedge_all(&self, factors: &[FormElement]) -> Result<FormElement> {
        factors.iter().try_fold(self.one(), |acc, f| self.wedge(&acc, f))
    }

    /// Splits `m` around copy `j` of generator `i`: returns the monomials
    /// strictly before and strictly after that copy.
    fn split(&self, m: &Monomial, i: usize, j: u8) -> (Monomial, Monomial) {
        let e = m.exponents();
        let mut pre = e.to_vec();
        let mut post = e.to_vec();
        for k in 0..e.len() {
            if k < i {
                post[k] = 0;
            } else if k > i {
                pre[k] = 0;
            }
        }
        pre[i] = j;
        post[i] = e[i] - j - 1;
        (Monomial::from_exponents(pre), Monomial::from_exponents(post))
    }

    /// Applies a derivation of bidegree `(dp, ds)` given on generators,
    /// summing `(±) prefix · image(g) · suffix` over every generator copy.
    pub(crate) fn derivation<'a>(
        &self,
        a: &FormElement,
        degree: usize,
        dp: u8,
        ds: u8,
        image: impl Fn(usize) -> Option<&'a FormElement>,
    ) -> Result<FormElement> {
        let mut out = FormElement::zero(degree);
        for (m, c) in a.terms() {
            let mut sign = 0u8;
            for (i, e) in m.support() {
                let step = (dp & self.pbit[i]) ^ (ds & self.sbit[i]);
                if let Some(img) = image(i).filter(|x| !x.is_zero()) {
                    for j in 0..e {
                        let s = sign ^ (step & (j & 1));
                        let (pre, post) = self.split(m, i, j);
                        for (t, ct) in img.terms() {
                            let Some((n1, m1)) = self.mul_monomials(&pre, t) else { continue };
                            let Some((n2, m2)) = self.mul_monomials(&m1, &post) else { continue };
                            let neg = (s == 1) ^ n1 ^ n2;
                            self.push(&mut out, m2, &(c * ct), neg)?;
                        }
                    }
                }
                sign ^= step & (e & 1);
            }
        }
        Ok(out)
    }

    pub fn differential(&self, a: &FormElement) -> Result<FormElement> {
        self.derivation(a, a.degree() + 1, 1, 0, |i| Some(&self.differential[i]))
    }

    /// Interior product: a derivation of degree -1 and parity of `v`.
    pub fn contract(&self, v: &VectorField, a: &FormElement) -> Result<FormElement> {
        if a.degree() == 0 {
            return Ok(FormElement::zero(0));
        }
        self.derivation(a, a.degree() - 1, 1, v.parity().bit(), |i| v.value(i))
    }

    /// `ι_{v_k} ∘ ⋯ ∘ ι_{v_1}`.
    pub fn multi_contract(&self, vs: &[VectorField], a: &FormElement) -> Result<FormElement> {
        let mut cur = a.clone();
        for v in vs {
            if cur.is_zero() && cur.degree() == 0 {
                break;
            }
            cur = self.contract(v, &cur)?;
        }
        Ok(cur)
    }

    /// `L_v = d ι_v + ι_v d`.
    pub fn lie_derivative(&self, v: &VectorField, a: &FormElement) -> Result<FormElement> {
        let first = self.differential(&self.contract(v, a)?)?;
        let second = self.contract(v, &self.differential(a)?)?;
        if first.is_zero() {
            return Ok(second);
        }
        Ok(first.add(&second))
    }

    /// Vector field bracket, characterised by `ι_{[v,w]} = [L_v, ι_w]`.
    pub fn bracket(&self, v: &VectorField, w: &VectorField) -> Result<VectorField> {
        let sign_odd = v.parity().is_odd() && w.parity().is_odd();
        let mut values = BTreeMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            if g.degree != 1 {
                continue;
            }
            let gi = self.generator_at(i);
            let iw = self.contract(w, &gi)?;
            let a = self.lie_derivative(v, &iw)?;
            let b = self.contract(w, &self.lie_derivative(v, &gi)?)?;
            let val = if sign_odd { a.add(&b) } else { a.sub(&b) };
            if !val.is_zero() {
                values.insert(i, val);
            }
        }
        Ok(VectorField::from_parts(v.parity() + w.parity(), values))
    }

    /// Degree-0 even derivation with `g_i ↦ images[i]` (zero where absent).
    pub fn even_derivation(&self, a: &FormElement, images: &[Option<FormElement>]) -> Result<FormElement> {
        self.derivation(a, a.degree(), 0, 0, |i| images.get(i).and_then(|x| x.as_ref()))
    }

    /// Algebra homomorphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, a: &FormElement, images: &[FormElement]) -> Result<FormElement> {
        if images.len() != self.ngens() {
            return Err(Error::Dimension(format!(
                "{} images for {} generators",
                images.len(),
                self.ngens()
            )));
        }
        let mut out = FormElement::zero(a.degree());
        for (m, c) in a.terms() {
            let mut acc = self.one();
            for (i, e) in m.support() {
                for _ in 0..e {
                    acc = self.wedge(&acc, &images[i])?;
                }
            }
            if !acc.is_zero() {
                assert_eq!(acc.degree(), a.degree(), "substitution changes degree");
                out.axpy(c, &acc);
            }
        }
        Ok(out)
    }

    /// All normalized monomials of cohomological degree `degree` within the
    /// truncation, in increasing order.
    pub fn monomials(&self, degree: usize) -> Result<Vec<Monomial>> {
        self.monomials_where(degree, |_| true)
    }

    /// As [`monomials`](Self::monomials), restricted to generators accepted
    /// by `allow`.
    pub fn monomials_where(&self, degree: usize, allow: impl Fn(usize) -> bool) -> Result<Vec<Monomial>> {
        let n = self.ngens();
        for (i, g) in self.generators.iter().enumerate() {
            let unbounded = allow(i)
                && g.degree == 0
                && !self.nilpotent[i]
                && (self.truncation.is_none() || g.weight == 0);
            if unbounded {
                return Err(Error::Model(format!(
                    "degree-0 generator `{}` makes the basis infinite without a truncation",
                    g.name
                )));
            }
        }
        let mut out = Vec::new();
        let mut cur = vec![0u8; n];
        let limit = self.truncation.unwrap_or(u32::MAX);
        self.enumerate(0, degree, limit, &allow, &mut cur, &mut out);
        out.sort();
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        i: usize,
        deg_left: usize,
        weight_left: u32,
        allow: &impl Fn(usize) -> bool,
        cur: &mut Vec<u8>,
        out: &mut Vec<Monomial>,
    ) {
        if i == self.ngens() {
            if deg_left == 0 {
                out.push(Monomial::from_exponents(cur.clone()));
            }
            return;
        }
        let g = &self.generators[i];
        let mut max = if !allow(i) {
            0
        } else if self.nilpotent[i] {
            1
        } else if g.degree > 0 {
            (deg_left / g.degree as usize).min(255) as u32
        } else {
            255
        };
        if let Some(w) = weight_left.checked_div(g.weight) {
            max = max.min(w);
        }
        for e in 0..=max {
            let dd = e as usize * g.degree as usize;
            if dd > deg_left {
                break;
            }
            cur[i] = e as u8;
            self.enumerate(i + 1, deg_left - dd, weight_left - e * g.weight, allow, cur, out);
        }
        cur[i] = 0;
    }

    /// Vector field with `ι_v(g) = values[g]` for degree-1 generators `g`.
    pub fn vector_field(&self, parity: Parity, values: Vec<(&str, FormElement)>) -> Result<VectorField> {
        let mut map = BTreeMap::new();
        for (name, val) in values {
            let i = self.index_of(name)?;
            self.check_field_value(parity, i, &val)?;
            if !val.is_zero() {
                map.insert(i, val);
            }
        }
        Ok(VectorField::from_parts(parity, map))
    }

    pub(crate) fn check_field_value(&self, parity: Parity, i: usize, val: &FormElement) -> Result<()> {
        let g = &self.generators[i];
        if g.degree != 1 {
            return Err(Error::Model(format!("vector fields pair only with degree-1 generators, not `{}`", g.name)));
        }
        if val.is_zero() {
            return Ok(());
        }
        if val.degree() != 0 {
            return Err(Error::Model(format!("value on `{}` must be a function", g.name)));
        }
        for (m, _) in val.terms() {
            if self.parity(m) != parity + g.parity {
                return Err(Error::Model(format!("value on `{}` has the wrong parity", g.name)));
            }
        }
        Ok(())
    }

    /// The constant field dual to degree-1 generator `name`.
    pub fn dual_field(&self, name: &str) -> Result<VectorField> {
        let i = self.index_of(name)?;
        let parity = self.generators[i].parity;
        self.vector_field(parity, vec![(name, self.one())])
    }

    /// `∂/∂x` in a polynomial model.
    pub fn partial(&self, coordinate: &str) -> Result<VectorField> {
        self.dual_field(&format!("d{coordinate}"))
    }
}
