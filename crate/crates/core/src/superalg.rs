//! Z-graded supercommutative Laurent polynomials over exact rationals.
//!
//! Elements are finite maps from canonical monomials to nonzero `BigRational`
//! coefficients. Every monomial is stored in the fixed generator order of its
//! [`GeneratorTable`], with the Koszul sign of any reordering absorbed into
//! the coefficient, so equality of elements is plain map equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};
use smallvec::SmallVec;

use crate::{Error, Result};

/// Z/2 grading of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        matches!(self, Parity::Odd)
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// One generator: name, parity, ghost number, and whether negative exponents
/// are permitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub parity: Parity,
    pub ghost: i32,
    pub laurent: bool,
}

impl GeneratorSpec {
    pub fn even(name: &str, ghost: i32) -> Self {
        GeneratorSpec {
            name: name.to_string(),
            parity: Parity::Even,
            ghost,
            laurent: false,
        }
    }

    pub fn odd(name: &str, ghost: i32) -> Self {
        GeneratorSpec {
            name: name.to_string(),
            parity: Parity::Odd,
            ghost,
            laurent: false,
        }
    }

    pub fn even_laurent(name: &str, ghost: i32) -> Self {
        GeneratorSpec {
            name: name.to_string(),
            parity: Parity::Even,
            ghost,
            laurent: true,
        }
    }
}

/// Ordered list of generators plus the distinguished central generator
/// `hbar` (even, ghost 0, Laurent), always stored last.
///
/// The order is total and fixed for the lifetime of the table; all monomial
/// canonicalization refers to it.
#[derive(Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    gens: Vec<GeneratorSpec>,
    hbar: usize,
}

impl GeneratorTable {
    /// Build a table from the given generators; `hbar` is appended
    /// automatically.
    pub fn new(mut gens: Vec<GeneratorSpec>) -> Result<Arc<Self>> {
        for g in &gens {
            if g.parity.is_odd() && g.laurent {
                return Err(Error::Domain(format!(
                    "odd generator `{}` cannot be Laurent",
                    g.name
                )));
            }
            if g.name == "hbar" {
                return Err(Error::Domain("`hbar` is reserved".into()));
            }
        }
        let mut names: Vec<&str> = gens.iter().map(|g| g.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        if names.len() != gens.len() {
            return Err(Error::Domain("generator names must be unique".into()));
        }
        let hbar = gens.len();
        gens.push(GeneratorSpec::even_laurent("hbar", 0));
        Ok(Arc::new(GeneratorTable { gens, hbar }))
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn hbar(&self) -> usize {
        self.hbar
    }

    pub fn spec(&self, i: usize) -> &GeneratorSpec {
        &self.gens[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.gens[i].name
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.gens[i].parity
    }

    pub fn ghost(&self, i: usize) -> i32 {
        self.gens[i].ghost
    }

    pub fn laurent(&self, i: usize) -> bool {
        self.gens[i].laurent
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &GeneratorSpec)> {
        self.gens.iter().enumerate()
    }
}

type Exps = SmallVec<[i32; 32]>;

/// Exponent vector in canonical generator order. Odd generators carry
/// exponent 0 or 1; negative exponents appear only on Laurent generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
}

impl Monomial {
    pub fn unit(table: &GeneratorTable) -> Self {
        Monomial {
            exps: smallvec::smallvec![0; table.len()],
        }
    }

    pub fn generator(table: &GeneratorTable, i: usize) -> Self {
        let mut m = Monomial::unit(table);
        m.exps[i] = 1;
        m
    }

    pub fn exp(&self, i: usize) -> i32 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[i32] {
        &self.exps
    }

    pub fn parity(&self, table: &GeneratorTable) -> Parity {
        let mut odd = false;
        for (i, &e) in self.exps.iter().enumerate() {
            if table.parity(i).is_odd() && e != 0 {
                odd = !odd;
            }
        }
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn ghost(&self, table: &GeneratorTable) -> i32 {
        self.exps
            .iter()
            .enumerate()
            .map(|(i, &e)| e * table.ghost(i))
            .sum()
    }

    /// Total polynomial degree; every generator except `hbar` has weight 1.
    pub fn tdeg(&self, table: &GeneratorTable) -> i32 {
        self.exps
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != table.hbar())
            .map(|(_, &e)| e)
            .sum()
    }

    pub fn hbar_exp(&self, table: &GeneratorTable) -> i32 {
        self.exps[table.hbar()]
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Number of odd generators present strictly before index `i`.
    fn odd_count_before(&self, table: &GeneratorTable, i: usize) -> u32 {
        let mut n = 0;
        for j in 0..i {
            if table.parity(j).is_odd() && self.exps[j] != 0 {
                n += 1;
            }
        }
        n
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

/// Result of canonicalizing a raw product of generator powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalForm {
    /// The product vanishes (an odd generator acquired exponent >= 2).
    Zero,
    Term { sign: i8, monomial: Monomial },
}

/// Sort a raw product of `(generator index, exponent)` factors into canonical
/// order, counting odd-odd transpositions.
///
/// Returns the accumulated Koszul sign, or [`NormalForm::Zero`] when an odd
/// generator would acquire exponent >= 2.
pub fn normalize(table: &GeneratorTable, factors: &[(usize, i32)]) -> Result<NormalForm> {
    let mut exps: Exps = smallvec::smallvec![0; table.len()];
    let mut odd_seq: SmallVec<[usize; 16]> = SmallVec::new();
    for &(g, e) in factors {
        if g >= table.len() {
            return Err(Error::Domain(format!("generator index {g} out of range")));
        }
        if e == 0 {
            continue;
        }
        if e < 0 && !table.laurent(g) {
            return Err(Error::NegativeExponent(table.name(g).to_string()));
        }
        if table.parity(g).is_odd() {
            if e > 1 || exps[g] != 0 {
                return Ok(NormalForm::Zero);
            }
            exps[g] = 1;
            odd_seq.push(g);
        } else {
            exps[g] = exps[g]
                .checked_add(e)
                .ok_or(Error::ExponentOverflow)?;
        }
    }
    // Inversions among the odd factors in encounter order.
    let mut inversions = 0u32;
    for i in 0..odd_seq.len() {
        for j in (i + 1)..odd_seq.len() {
            if odd_seq[i] > odd_seq[j] {
                inversions += 1;
            }
        }
    }
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Ok(NormalForm::Term {
        sign,
        monomial: Monomial { exps },
    })
}

/// Product of two canonical monomials: `None` when an odd generator repeats,
/// otherwise the Koszul sign and the merged monomial.
pub fn mul_monomials(
    table: &GeneratorTable,
    a: &Monomial,
    b: &Monomial,
) -> Result<Option<(i8, Monomial)>> {
    let n = table.len();
    let mut exps: Exps = smallvec::smallvec![0; n];
    // Each odd factor of `b` hops over every odd factor of `a` that sits
    // strictly above it in the table order.
    let mut transpositions = 0u32;
    let mut a_odd_remaining = 0u32;
    for i in 0..n {
        if table.parity(i).is_odd() && a.exps[i] != 0 {
            a_odd_remaining += 1;
        }
    }
    for i in 0..n {
        let (ea, eb) = (a.exps[i], b.exps[i]);
        if table.parity(i).is_odd() {
            if ea != 0 && eb != 0 {
                return Ok(None);
            }
            if ea != 0 {
                a_odd_remaining -= 1;
            }
            if eb != 0 {
                transpositions += a_odd_remaining;
            }
            exps[i] = ea + eb;
        } else {
            exps[i] = ea.checked_add(eb).ok_or(Error::ExponentOverflow)?;
        }
    }
    let sign = if transpositions % 2 == 0 { 1 } else { -1 };
    Ok(Some((sign, Monomial { exps })))
}

/// Left partial derivative of a canonical monomial by generator `v`:
/// the Koszul sign of anticommuting `v` to the front, the exponent factor,
/// and the reduced monomial. `None` when the derivative vanishes.
pub fn dleft_monomial(
    table: &GeneratorTable,
    v: usize,
    m: &Monomial,
) -> Option<(BigRational, Monomial)> {
    let e = m.exps[v];
    if e == 0 {
        return None;
    }
    let mut exps = m.exps.clone();
    if table.parity(v).is_odd() {
        exps[v] = 0;
        let sign = if m.odd_count_before(table, v) % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        Some((sign, Monomial { exps }))
    } else {
        exps[v] = e - 1;
        Some((BigRational::from(BigInt::from(e)), Monomial { exps }))
    }
}

/// Sparse supercommutative Laurent polynomial; the universal value type.
#[derive(Debug, Clone)]
pub struct Element {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.same_table(other) && self.terms == other.terms
    }
}

impl Eq for Element {}

/// Reported grading of an element; `None` marks a mixed grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grading {
    pub parity: Option<Parity>,
    pub ghost: Option<i32>,
    pub tdeg: Option<i32>,
}

impl Element {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        Element {
            table: Arc::clone(table),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        Element::constant(table, BigRational::one())
    }

    pub fn constant(table: &Arc<GeneratorTable>, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(table), c);
        }
        Element {
            table: Arc::clone(table),
            terms,
        }
    }

    pub fn generator(table: &Arc<GeneratorTable>, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::generator(table, i), BigRational::one());
        Element {
            table: Arc::clone(table),
            terms,
        }
    }

    pub fn from_monomial(table: &Arc<GeneratorTable>, m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element {
            table: Arc::clone(table),
            terms,
        }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn same_table(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.table, &other.table) || self.table == other.table
    }

    fn check_table(&self, other: &Element) -> Result<()> {
        if self.same_table(other) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    pub fn insert_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Element {
        let mut out = Element::zero(&self.table);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Element {
        if c.is_zero() {
            return Element::zero(&self.table);
        }
        let mut out = Element::zero(&self.table);
        for (m, k) in &self.terms {
            out.terms.insert(m.clone(), k * c);
        }
        out
    }

    /// Supercommutative product.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_table(other)?;
        let table = &self.table;
        let mut out = Element::zero(table);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((sign, m)) = mul_monomials(table, ma, mb)? {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    out.insert_term(m, c);
                }
            }
        }
        Ok(out)
    }

    /// Left derivative by generator `v`, satisfying the graded Leibniz rule
    /// `dleft(v, fg) = dleft(v, f) g + (-1)^{|v||f|} f dleft(v, g)`.
    pub fn dleft(&self, v: usize) -> Element {
        let table = &self.table;
        let mut out = Element::zero(table);
        for (m, c) in &self.terms {
            if let Some((factor, dm)) = dleft_monomial(table, v, m) {
                out.insert_term(dm, c * factor);
            }
        }
        out
    }

    /// Multiply by `hbar^k` (k may be negative).
    pub fn mul_hbar(&self, k: i32) -> Element {
        let table = &self.table;
        let h = table.hbar();
        let mut out = Element::zero(table);
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            exps[h] += k;
            out.terms.insert(Monomial { exps }, c.clone());
        }
        out
    }

    /// Coefficient of `hbar^k` as an hbar-free element.
    pub fn hbar_coefficient(&self, k: i32) -> Element {
        let table = &self.table;
        let h = table.hbar();
        let mut out = Element::zero(table);
        for (m, c) in &self.terms {
            if m.exps[h] == k {
                let mut exps = m.exps.clone();
                exps[h] = 0;
                out.terms.insert(Monomial { exps }, c.clone());
            }
        }
        out
    }

    /// Largest hbar exponent present, if any.
    pub fn hbar_degrees(&self) -> Vec<i32> {
        let h = self.table.hbar();
        let mut ds: Vec<i32> = self.terms.keys().map(|m| m.exps[h]).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Integer power. Negative powers require a single-term monomial in
    /// Laurent generators only.
    pub fn pow(&self, n: i64) -> Result<Element> {
        if n == 0 {
            return Ok(Element::one(&self.table));
        }
        if n < 0 {
            if self.terms.len() != 1 {
                return Err(Error::Domain(
                    "negative power of a non-monomial element".into(),
                ));
            }
            let (m, c) = self.terms.iter().next().unwrap();
            for (i, &e) in m.exps.iter().enumerate() {
                if e != 0 && !self.table.laurent(i) {
                    return Err(Error::Domain(format!(
                        "negative power requires Laurent generators only, found `{}`",
                        self.table.name(i)
                    )));
                }
            }
            let mut base_exps = m.exps.clone();
            for e in base_exps.iter_mut() {
                *e = e
                    .checked_mul(i32::try_from(n).map_err(|_| Error::ExponentOverflow)?)
                    .ok_or(Error::ExponentOverflow)?;
            }
            let c = c.recip();
            let mut cc = BigRational::one();
            for _ in 0..(-n) {
                cc *= &c;
            }
            return Ok(Element::from_monomial(
                &self.table,
                Monomial { exps: base_exps },
                cc,
            ));
        }
        let mut acc = Element::one(&self.table);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Parity of the element, `None` when mixed (zero counts as even).
    pub fn parity(&self) -> Option<Parity> {
        self.grading().parity
    }

    /// Report each grading when all monomials agree, `None` otherwise.
    /// The zero element reports (even, 0, 0).
    pub fn grading(&self) -> Grading {
        let table = &self.table;
        if self.terms.is_empty() {
            return Grading {
                parity: Some(Parity::Even),
                ghost: Some(0),
                tdeg: Some(0),
            };
        }
        let mut parity = None;
        let mut ghost = None;
        let mut tdeg = None;
        let mut first = true;
        for m in self.terms.keys() {
            let (p, g, t) = (m.parity(table), m.ghost(table), m.tdeg(table));
            if first {
                parity = Some(p);
                ghost = Some(g);
                tdeg = Some(t);
                first = false;
            } else {
                if parity != Some(p) {
                    parity = None;
                }
                if ghost != Some(g) {
                    ghost = None;
                }
                if tdeg != Some(t) {
                    tdeg = None;
                }
            }
        }
        Grading {
            parity,
            ghost,
            tdeg,
        }
    }

    /// Split into parity-homogeneous parts (even, odd).
    pub fn parity_split(&self) -> (Element, Element) {
        let table = &self.table;
        let mut even = Element::zero(table);
        let mut odd = Element::zero(table);
        for (m, c) in &self.terms {
            match m.parity(table) {
                Parity::Even => even.terms.insert(m.clone(), c.clone()),
                Parity::Odd => odd.terms.insert(m.clone(), c.clone()),
            };
        }
        (even, odd)
    }

    /// True when every monomial involves only the listed generators
    /// (hbar always permitted).
    pub fn supported_on(&self, allowed: &[usize]) -> bool {
        let h = self.table.hbar();
        self.terms.keys().all(|m| {
            m.exps
                .iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || i == h || allowed.contains(&i))
        })
    }

    /// If the element is a constant multiple of `other`, return the ratio.
    pub fn ratio_to(&self, other: &Element) -> Option<BigRational> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let mut ratio: Option<BigRational> = None;
        for ((ma, ca), (mb, cb)) in self.terms.iter().zip(other.terms.iter()) {
            if ma != mb {
                return None;
            }
            let r = ca / cb;
            match &ratio {
                None => ratio = Some(r),
                Some(prev) if *prev == r => {}
                _ => return None,
            }
        }
        ratio
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let table = &self.table;
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    factors.push(table.name(i).to_string());
                } else {
                    factors.push(format!("{}^{}", table.name(i), e));
                }
            }
            if factors.is_empty() {
                write_rational(f, &abs)?;
            } else {
                if !abs.is_one() {
                    write_rational(f, &abs)?;
                    write!(f, "*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// d=2 flavor of the table used throughout the crate tests.
    fn table() -> Arc<GeneratorTable> {
        GeneratorTable::new(vec![
            GeneratorSpec::even("x1", 0),
            GeneratorSpec::even("x2", 0),
            GeneratorSpec::even("p1", 0),
            GeneratorSpec::even("p2", 0),
            GeneratorSpec::odd("th1", 0),
            GeneratorSpec::odd("th2", 0),
            GeneratorSpec::odd("b", -1),
            GeneratorSpec::odd("c", 1),
            GeneratorSpec::even("beta", -1),
            GeneratorSpec::even_laurent("gamma", 1),
        ])
        .unwrap()
    }

    #[test]
    fn normalize_counts_odd_transpositions() {
        let t = table();
        let th1 = t.index_of("th1").unwrap();
        let th2 = t.index_of("th2").unwrap();
        // th2 * th1 -> -(th1 th2)
        let nf = normalize(&t, &[(th2, 1), (th1, 1)]).unwrap();
        match nf {
            NormalForm::Term { sign, monomial } => {
                assert_eq!(sign, -1);
                assert_eq!(monomial.exp(th1), 1);
                assert_eq!(monomial.exp(th2), 1);
            }
            NormalForm::Zero => panic!("unexpected zero"),
        }
    }

    #[test]
    fn normalize_odd_square_is_zero() {
        let t = table();
        let th1 = t.index_of("th1").unwrap();
        assert_eq!(
            normalize(&t, &[(th1, 1), (th1, 1)]).unwrap(),
            NormalForm::Zero
        );
        assert_eq!(normalize(&t, &[(th1, 2)]).unwrap(), NormalForm::Zero);
    }

    #[test]
    fn normalize_even_factors_commute() {
        let t = table();
        let gamma = t.index_of("gamma").unwrap();
        let beta = t.index_of("beta").unwrap();
        let c = t.index_of("c").unwrap();
        let nf = normalize(&t, &[(gamma, -1), (beta, 2), (c, 1)]).unwrap();
        match nf {
            NormalForm::Term { sign, monomial } => {
                assert_eq!(sign, 1);
                assert_eq!(monomial.exp(gamma), -1);
                assert_eq!(monomial.exp(beta), 2);
                assert_eq!(monomial.exp(c), 1);
            }
            NormalForm::Zero => panic!("unexpected zero"),
        }
    }

    #[test]
    fn normalize_rejects_negative_non_laurent() {
        let t = table();
        let beta = t.index_of("beta").unwrap();
        assert!(matches!(
            normalize(&t, &[(beta, -1)]),
            Err(Error::NegativeExponent(_))
        ));
    }

    #[test]
    fn add_divided_powers() {
        // beta^[2] + beta^[2] = beta^2
        let t = table();
        let beta = t.index_of("beta").unwrap();
        let b2 = Element::generator(&t, beta).pow(2).unwrap();
        let half = b2.scale(&rat(1, 2));
        let sum = half.add(&half).unwrap();
        assert_eq!(sum, b2);
    }

    #[test]
    fn add_cancels() {
        let t = table();
        let p1 = t.index_of("p1").unwrap();
        let p = Element::generator(&t, p1);
        assert!(p.add(&p.neg()).unwrap().is_zero());
    }

    #[test]
    fn mul_anticommutes_odd() {
        let t = table();
        let th1 = Element::generator(&t, t.index_of("th1").unwrap());
        let th2 = Element::generator(&t, t.index_of("th2").unwrap());
        let ab = th1.mul(&th2).unwrap();
        let ba = th2.mul(&th1).unwrap();
        assert_eq!(ba, ab.neg());
        assert!(th1.mul(&th1).unwrap().is_zero());
    }

    #[test]
    fn mul_laurent() {
        let t = table();
        let gamma = t.index_of("gamma").unwrap();
        let g = Element::generator(&t, gamma);
        let ginv = g.pow(-1).unwrap();
        let g2 = g.pow(2).unwrap();
        assert_eq!(ginv.mul(&g2).unwrap(), g);
    }

    #[test]
    fn dleft_examples() {
        let t = table();
        let th1 = t.index_of("th1").unwrap();
        let th2 = t.index_of("th2").unwrap();
        let e_th1 = Element::generator(&t, th1);
        let e_th2 = Element::generator(&t, th2);
        let m = e_th1.mul(&e_th2).unwrap();
        assert_eq!(m.dleft(th1), e_th2);
        assert_eq!(m.dleft(th2), e_th1.neg());

        let gamma = t.index_of("gamma").unwrap();
        let ginv = Element::generator(&t, gamma).pow(-1).unwrap();
        let d = ginv.dleft(gamma);
        let expected = Element::generator(&t, gamma).pow(-2).unwrap().neg();
        assert_eq!(d, expected);
    }

    #[test]
    fn dleft_divided_power() {
        // d/dbeta (beta^k / k!) = beta^(k-1) / (k-1)!
        let t = table();
        let beta = t.index_of("beta").unwrap();
        for k in 1..6i64 {
            let fact =
                (1..=k).map(|i| BigRational::from_i64(i).unwrap()).product::<BigRational>();
            let bk = Element::generator(&t, beta)
                .pow(k)
                .unwrap()
                .scale(&fact.recip());
            let fact1 = (1..k).map(|i| BigRational::from_i64(i).unwrap()).product::<BigRational>();
            let bk1 = Element::generator(&t, beta)
                .pow(k - 1)
                .unwrap()
                .scale(&fact1.recip());
            assert_eq!(bk.dleft(beta), bk1);
        }
    }

    #[test]
    fn grading_reports() {
        let t = table();
        let one = Element::one(&t);
        let g = one.grading();
        assert_eq!(g.parity, Some(Parity::Even));
        assert_eq!(g.ghost, Some(0));
        assert_eq!(g.tdeg, Some(0));

        let c = Element::generator(&t, t.index_of("c").unwrap());
        let gamma = Element::generator(&t, t.index_of("gamma").unwrap());
        let mixed = c.add(&gamma.pow(2).unwrap()).unwrap();
        let gm = mixed.grading();
        assert_eq!(gm.parity, None); // c odd, gamma^2 even
        assert_eq!(gm.ghost, None); // ghost 1 vs 2
        assert_eq!(gm.tdeg, None); // 1 vs 2
    }

    #[test]
    fn display_round_readable() {
        let t = table();
        let gamma = t.index_of("gamma").unwrap();
        let c = t.index_of("c").unwrap();
        let e = Element::generator(&t, gamma)
            .pow(-1)
            .unwrap()
            .scale(&rat(-1, 2))
            .add(&Element::generator(&t, c))
            .unwrap();
        assert_eq!(e.to_string(), "-1/2*gamma^-1 + c");
    }
}
