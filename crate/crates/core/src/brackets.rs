//! Constant-coefficient graded Poisson bracket and Moyal star product.
//!
//! The tensor is normalized by `P^{uv} = (1/2){z^u, z^v}`, so that the first
//! Moyal term is half the bracket: `C_1(f, g) = (1/2){f, g}`. The order-k
//! term is the k-fold contraction
//!
//! ```text
//! C_k(f, g) = (1/k!) sum T^{u1 v1} ... T^{uk vk}
//!             (-1)^{sum_{i<j} |v_i||v_j| + |f| sum_i |v_i|}
//!             (d_{uk} ... d_{u1} f) (d_{vk} ... d_{v1} g)
//! ```
//!
//! with left derivatives and the contraction tensor `T^{uv} = (-1)^{|u|} P^{uv}`.
//! The parity factor on the odd-odd block is forced: with it, the generator
//! bracket table, `C_1 = (1/2){-,-}`, and the Clifford relation
//! `th^a o th^b = th^a th^b + hbar d^{ab}` hold simultaneously.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};

use crate::superalg::{dleft_monomial, mul_monomials, Element, GeneratorTable, Monomial, Parity};
use crate::{Error, Result};

/// Constant graded-antisymmetric pairing on generators (`hbar` excluded).
#[derive(Debug, Clone)]
pub struct PoissonTensor {
    table: Arc<GeneratorTable>,
    /// P^{uv}, sparse.
    entries: BTreeMap<(usize, usize), BigRational>,
    /// T^{uv} = (-1)^{|u|} P^{uv}, the tensor actually contracted.
    contraction: Vec<(usize, usize, BigRational)>,
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

fn two() -> BigRational {
    BigRational::from(BigInt::from(2))
}

impl PoissonTensor {
    /// Build the tensor from generator brackets `{z^u, z^v} = value`.
    ///
    /// Values must be constants; the graded-antisymmetric completion is
    /// filled in automatically, unspecified pairs are zero.
    pub fn from_brackets(
        table: &Arc<GeneratorTable>,
        brackets: &[(usize, usize, Element)],
    ) -> Result<PoissonTensor> {
        let mut constant_brackets = Vec::with_capacity(brackets.len());
        for (u, v, val) in brackets {
            let c = constant_value(val)?;
            constant_brackets.push((*u, *v, c));
        }
        Self::from_constant_brackets(table, &constant_brackets)
    }

    pub fn from_constant_brackets(
        table: &Arc<GeneratorTable>,
        brackets: &[(usize, usize, BigRational)],
    ) -> Result<PoissonTensor> {
        let hbar = table.hbar();
        let mut entries: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
        for (u, v, c) in brackets {
            let (u, v) = (*u, *v);
            if u >= table.len() || v >= table.len() || u == hbar || v == hbar {
                return Err(Error::Domain(
                    "bracket indices must name non-hbar generators".into(),
                ));
            }
            if c.is_zero() {
                continue;
            }
            if table.parity(u) != table.parity(v) {
                return Err(Error::Domain(format!(
                    "mixed-parity bracket {{{}, {}}} must vanish",
                    table.name(u),
                    table.name(v)
                )));
            }
            if table.laurent(u) && table.laurent(v) {
                return Err(Error::UnsupportedBackground(format!(
                    "Laurent-Laurent pairing {{{}, {}}}",
                    table.name(u),
                    table.name(v)
                )));
            }
            let p = c * half();
            // graded antisymmetry: P^{vu} = -(-1)^{|u||v|} P^{uv}
            let odd_pair = table.parity(u).is_odd() && table.parity(v).is_odd();
            let mirrored = if odd_pair { p.clone() } else { -p.clone() };
            if u == v && !odd_pair {
                return Err(Error::Domain(format!(
                    "{{{0}, {0}}} must vanish for even {0}",
                    table.name(u)
                )));
            }
            for (key, value) in [((u, v), p), ((v, u), mirrored)] {
                match entries.get(&key) {
                    None => {
                        entries.insert(key, value);
                    }
                    Some(existing) if *existing == value => {}
                    Some(_) => {
                        return Err(Error::Domain(format!(
                            "bracket table violates graded antisymmetry at ({}, {})",
                            table.name(key.0),
                            table.name(key.1)
                        )));
                    }
                }
            }
        }
        entries.retain(|_, v| !v.is_zero());
        let contraction = entries
            .iter()
            .map(|(&(u, v), p)| {
                let t = if table.parity(u).is_odd() {
                    -p.clone()
                } else {
                    p.clone()
                };
                (u, v, t)
            })
            .collect();
        Ok(PoissonTensor {
            table: Arc::clone(table),
            entries,
            contraction,
        })
    }

    pub fn zero(table: &Arc<GeneratorTable>) -> PoissonTensor {
        PoissonTensor {
            table: Arc::clone(table),
            entries: BTreeMap::new(),
            contraction: Vec::new(),
        }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    /// P^{uv}.
    pub fn entry(&self, u: usize, v: usize) -> BigRational {
        self.entries
            .get(&(u, v))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn check_operand(&self, f: &Element) -> Result<()> {
        if Arc::ptr_eq(f.table(), &self.table) || **f.table() == *self.table {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    /// Graded Poisson bracket `{f, g} = 2 C_1(f, g)`.
    pub fn poisson(&self, f: &Element, g: &Element) -> Result<Element> {
        Ok(self.moyal_term(1, f, g)?.scale(&two()))
    }

    /// The order-k bidifferential term `C_k(f, g)` of the Moyal product.
    pub fn moyal_term(&self, k: usize, f: &Element, g: &Element) -> Result<Element> {
        self.check_operand(f)?;
        self.check_operand(g)?;
        let mut bi = BiElement::new(f, g);
        for _ in 0..k {
            bi = self.pi_step(&bi);
            if bi.terms.is_empty() {
                return Ok(Element::zero(&self.table));
            }
        }
        Ok(bi.collapse(&self.table, &factorial(k).recip())?)
    }

    /// Moyal product `f o g = sum_k hbar^k C_k(f, g)` (finite for polynomials).
    pub fn star(&self, f: &Element, g: &Element) -> Result<Element> {
        self.check_operand(f)?;
        self.check_operand(g)?;
        let mut out = Element::zero(&self.table);
        let mut bi = BiElement::new(f, g);
        let bound = nonlaurent_degree(f) + nonlaurent_degree(g) + 1;
        let mut k = 0usize;
        loop {
            let coeff = factorial(k).recip();
            let layer = bi.collapse(&self.table, &coeff)?;
            out = out.add(&layer.mul_hbar(k as i32))?;
            bi = self.pi_step(&bi);
            if bi.terms.is_empty() {
                return Ok(out);
            }
            k += 1;
            assert!(
                k <= bound,
                "star product failed to terminate; tensor pairs two Laurent generators"
            );
        }
    }

    /// Moyal bracket `[f, g] = f o g - (-1)^{|f||g|} g o f`, extended
    /// bilinearly over parity-homogeneous parts.
    pub fn moyal_bracket(&self, f: &Element, g: &Element) -> Result<Element> {
        let (fe, fo) = f.parity_split();
        let (ge, go) = g.parity_split();
        let mut out = Element::zero(&self.table);
        for (fi, pf) in [(&fe, Parity::Even), (&fo, Parity::Odd)] {
            if fi.is_zero() {
                continue;
            }
            for (gj, pg) in [(&ge, Parity::Even), (&go, Parity::Odd)] {
                if gj.is_zero() {
                    continue;
                }
                let fg = self.star(fi, gj)?;
                let gf = self.star(gj, fi)?;
                let signed = if pf.is_odd() && pg.is_odd() {
                    fg.add(&gf)?
                } else {
                    fg.sub(&gf)?
                };
                out = out.add(&signed)?;
            }
        }
        Ok(out)
    }

    /// The same bracket assembled from the odd-order terms,
    /// `2 sum_l hbar^{2l+1} C_{2l+1}(f, g)`; kept as an independent route.
    pub fn moyal_bracket_odd_sum(&self, f: &Element, g: &Element) -> Result<Element> {
        let bound = nonlaurent_degree(f) + nonlaurent_degree(g) + 1;
        let mut out = Element::zero(&self.table);
        let mut k = 1usize;
        while k <= bound {
            let ck = self.moyal_term(k, f, g)?;
            out = out.add(&ck.scale(&two()).mul_hbar(k as i32))?;
            k += 2;
        }
        Ok(out)
    }

    /// `<f, g> = hbar^{-1} [f, g]`, the bracket entering the differential.
    pub fn scaled_bracket(&self, f: &Element, g: &Element) -> Result<Element> {
        Ok(self.moyal_bracket(f, g)?.mul_hbar(-1))
    }

    /// One application of the contraction operator to a tensor-square term:
    /// `Pi(m1 (x) m2) = sum T^{uv} (-1)^{|v||m1|} (d_u m1) (x) (d_v m2)`.
    fn pi_step(&self, bi: &BiElement) -> BiElement {
        let table = &self.table;
        let mut out = BiElement {
            terms: BTreeMap::new(),
        };
        for ((m1, m2), c) in &bi.terms {
            let p1 = m1.parity(table);
            for (u, v, t) in &self.contraction {
                let Some((f1, d1)) = dleft_monomial(table, *u, m1) else {
                    continue;
                };
                let Some((f2, d2)) = dleft_monomial(table, *v, m2) else {
                    continue;
                };
                let mut coeff = c * t * f1 * f2;
                if table.parity(*v).is_odd() && p1.is_odd() {
                    coeff = -coeff;
                }
                if coeff.is_zero() {
                    continue;
                }
                use std::collections::btree_map::Entry;
                match out.terms.entry((d1, d2)) {
                    Entry::Vacant(e) => {
                        e.insert(coeff);
                    }
                    Entry::Occupied(mut e) => {
                        *e.get_mut() += coeff;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
        out
    }
}

/// Formal tensor-square terms with Koszul bookkeeping absorbed into the
/// coefficients.
struct BiElement {
    terms: BTreeMap<(Monomial, Monomial), BigRational>,
}

impl BiElement {
    fn new(f: &Element, g: &Element) -> BiElement {
        let mut terms = BTreeMap::new();
        for (m1, c1) in f.terms() {
            for (m2, c2) in g.terms() {
                let c = c1 * c2;
                if !c.is_zero() {
                    terms.insert((m1.clone(), m2.clone()), c);
                }
            }
        }
        BiElement { terms }
    }

    fn collapse(&self, table: &Arc<GeneratorTable>, scale: &BigRational) -> Result<Element> {
        let mut out = Element::zero(table);
        for ((m1, m2), c) in &self.terms {
            if let Some((sign, m)) = mul_monomials(table, m1, m2)? {
                let mut coeff = c * scale;
                if sign < 0 {
                    coeff = -coeff;
                }
                out.insert_term(m, coeff);
            }
        }
        Ok(out)
    }
}

fn constant_value(e: &Element) -> Result<BigRational> {
    if e.is_zero() {
        return Ok(BigRational::zero());
    }
    if e.len() == 1 {
        let (m, c) = e.terms().next().unwrap();
        if m.is_unit() {
            return Ok(c.clone());
        }
    }
    Err(Error::UnsupportedBackground(
        "generator bracket values must be constant".into(),
    ))
}

fn factorial(k: usize) -> BigRational {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= BigInt::from(i);
    }
    BigRational::from(f)
}

/// Total degree counted over non-Laurent generators only; bounds the number
/// of contraction steps the star product can take.
fn nonlaurent_degree(f: &Element) -> usize {
    let table = f.table();
    let mut max = 0i64;
    for (m, _) in f.terms() {
        let d: i64 = m
            .exps()
            .iter()
            .enumerate()
            .filter(|&(i, _)| !table.laurent(i))
            .map(|(_, &e)| i64::from(e))
            .sum();
        max = max.max(d);
    }
    usize::try_from(max.max(0)).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::GeneratorSpec;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Minimal d=1 phase superspace: x, p, th plus the T*W ghosts.
    fn setup() -> (Arc<GeneratorTable>, PoissonTensor) {
        let table = GeneratorTable::new(vec![
            GeneratorSpec::even("x1", 0),
            GeneratorSpec::even("p1", 0),
            GeneratorSpec::odd("th1", 0),
            GeneratorSpec::odd("b", -1),
            GeneratorSpec::odd("c", 1),
            GeneratorSpec::even("beta", -1),
            GeneratorSpec::even_laurent("gamma", 1),
        ])
        .unwrap();
        let x = table.index_of("x1").unwrap();
        let p = table.index_of("p1").unwrap();
        let th = table.index_of("th1").unwrap();
        let b = table.index_of("b").unwrap();
        let c = table.index_of("c").unwrap();
        let beta = table.index_of("beta").unwrap();
        let gamma = table.index_of("gamma").unwrap();
        let one = Element::one(&table);
        let tensor = PoissonTensor::from_brackets(
            &table,
            &[
                (th, th, one.scale(&rat(2, 1))),
                (p, x, one.clone()),
                (b, c, one.clone()),
                (beta, gamma, one),
            ],
        )
        .unwrap();
        (table, tensor)
    }

    fn gen(table: &Arc<GeneratorTable>, name: &str) -> Element {
        Element::generator(table, table.index_of(name).unwrap())
    }

    #[test]
    fn tensor_normalization() {
        let (table, tensor) = setup();
        let th = table.index_of("th1").unwrap();
        let b = table.index_of("b").unwrap();
        let c = table.index_of("c").unwrap();
        assert_eq!(tensor.entry(th, th), rat(1, 1));
        // odd-odd completion is symmetric
        assert_eq!(tensor.entry(b, c), rat(1, 2));
        assert_eq!(tensor.entry(c, b), rat(1, 2));
    }

    #[test]
    fn empty_tensor_is_zero() {
        let (table, _) = setup();
        let tensor = PoissonTensor::from_brackets(&table, &[]).unwrap();
        let f = gen(&table, "p1");
        let g = gen(&table, "x1");
        assert!(tensor.poisson(&f, &g).unwrap().is_zero());
    }

    #[test]
    fn generator_brackets_round_trip() {
        let (table, tensor) = setup();
        let cases = [
            ("th1", "th1", rat(2, 1)),
            ("p1", "x1", rat(1, 1)),
            ("x1", "p1", rat(-1, 1)),
            ("b", "c", rat(1, 1)),
            ("c", "b", rat(1, 1)),
            ("beta", "gamma", rat(1, 1)),
            ("gamma", "beta", rat(-1, 1)),
        ];
        for (a, b, expected) in cases {
            let got = tensor.poisson(&gen(&table, a), &gen(&table, b)).unwrap();
            assert_eq!(
                got,
                Element::constant(&table, expected.clone()),
                "{{{a},{b}}}"
            );
        }
        // {1, g} = 0
        let one = Element::one(&table);
        assert!(tensor.poisson(&one, &gen(&table, "x1")).unwrap().is_zero());
    }

    #[test]
    fn clifford_relation() {
        let (table, tensor) = setup();
        let th = gen(&table, "th1");
        let got = tensor.star(&th, &th).unwrap();
        let hbar = Element::one(&table).mul_hbar(1);
        assert_eq!(got, hbar);
    }

    #[test]
    fn star_unit() {
        let (table, tensor) = setup();
        let one = Element::one(&table);
        let f = gen(&table, "p1")
            .mul(&gen(&table, "th1"))
            .unwrap()
            .add(&gen(&table, "gamma").pow(-1).unwrap())
            .unwrap();
        assert_eq!(tensor.star(&f, &one).unwrap(), f);
        assert_eq!(tensor.star(&one, &f).unwrap(), f);
    }

    #[test]
    fn canonical_commutator() {
        let (table, tensor) = setup();
        let x = gen(&table, "x1");
        let p = gen(&table, "p1");
        let xp = tensor.star(&x, &p).unwrap();
        let px = tensor.star(&p, &x).unwrap();
        let diff = xp.sub(&px).unwrap();
        assert_eq!(diff, Element::one(&table).mul_hbar(1).neg());
    }

    #[test]
    fn moyal_c2_value() {
        // C_2(p^2, x^2) = (1/2!) (P^{px})^2 * 2 * 2 = 1/2 with P^{px} = 1/2.
        let (table, tensor) = setup();
        let p2 = gen(&table, "p1").pow(2).unwrap();
        let x2 = gen(&table, "x1").pow(2).unwrap();
        let c2 = tensor.moyal_term(2, &p2, &x2).unwrap();
        assert_eq!(c2, Element::constant(&table, rat(1, 2)));
    }

    #[test]
    fn bracket_of_quadratic_has_no_higher_terms() {
        // [pi, pi] = hbar {pi, pi}: C_3 of a quadratic vanishes.
        let (table, tensor) = setup();
        let pi = gen(&table, "p1").mul(&gen(&table, "th1")).unwrap();
        let mb = tensor.moyal_bracket(&pi, &pi).unwrap();
        let pb = tensor.poisson(&pi, &pi).unwrap().mul_hbar(1);
        assert_eq!(mb, pb);
    }

    #[test]
    fn odd_sum_route_agrees() {
        let (table, tensor) = setup();
        let f = gen(&table, "c")
            .mul(&gen(&table, "p1"))
            .unwrap()
            .add(&gen(&table, "beta").pow(2).unwrap())
            .unwrap();
        let g = gen(&table, "gamma")
            .pow(2)
            .unwrap()
            .mul(&gen(&table, "b"))
            .unwrap();
        assert_eq!(
            tensor.moyal_bracket(&f, &g).unwrap(),
            tensor.moyal_bracket_odd_sum(&f, &g).unwrap()
        );
    }

    #[test]
    fn rejects_nonconstant_bracket() {
        let (table, _) = setup();
        let p = table.index_of("p1").unwrap();
        let x = table.index_of("x1").unwrap();
        let err = PoissonTensor::from_brackets(&table, &[(p, x, gen(&table, "x1"))]);
        assert!(matches!(err, Err(Error::UnsupportedBackground(_))));
    }

    #[test]
    fn rejects_antisymmetry_violation() {
        let (table, _) = setup();
        let p = table.index_of("p1").unwrap();
        let x = table.index_of("x1").unwrap();
        let one = Element::one(&table);
        let err = PoissonTensor::from_brackets(
            &table,
            &[(p, x, one.clone()), (x, p, one.clone())],
        );
        assert!(matches!(err, Err(Error::Domain(_))));
    }
}
