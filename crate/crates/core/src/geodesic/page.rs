use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::geodesic::gysin::{gysin_unit_tangent_homology, reduce, UnitTangentHomology};
use crate::geodesic::ring::GeneratorRing;
use crate::geodesic::spec::{bott_index, CrossSpec, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PageIndex {
    Finite(usize),
    Infinity,
}

impl fmt::Display for PageIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PageIndex::Finite(r) => write!(f, "{r}"),
            PageIndex::Infinity => f.write_str("inf"),
        }
    }
}

/// An element of one entry `E_{p,q}`, in coordinates over its generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PageElement {
    pub p: usize,
    pub q: i64,
    pub coords: Vec<i64>,
}

impl PageElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.p as i64 + self.q
    }
}

/// Bidegree `(1, α₁ + n - 2)` of `T`.
pub fn t_bidegree(spec: &CrossSpec) -> (usize, i64) {
    (1, spec.alpha1 as i64 + spec.n as i64 - 2)
}

/// The `q` at which the Thom isomorphism places `H_j(UM)` in column `p >= 1`:
/// `E_{p,q} = H_{p+q+n-α_p}(UM)`.
pub fn thom_row(spec: &CrossSpec, p: usize, j: usize) -> i64 {
    j as i64 + bott_index(spec, p) as i64 - p as i64 - spec.n as i64
}

/// One entry of a page: the groups `H_k(M)` (column 0) or `H_j(UM)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    /// Unregraded degree in `M` (column 0) or `UM`.
    pub source_degree: usize,
    pub orders: Vec<u64>,
}

/// A page of the length spectral sequence in columns `0..=pmax`, with the
/// product induced by the intersection rings of `M` and `UM`.
#[derive(Clone, Debug)]
pub struct SpectralPage {
    pub page: PageIndex,
    pub n: usize,
    pub pmax: usize,
    pub entries: BTreeMap<(usize, i64), Entry>,
    base: GeneratorRing,
    tangent: GeneratorRing,
    um: UnitTangentHomology,
}

/// Groups of page 1 in columns `0..=pmax`, nonzero entries only.
pub fn page_entries(
    spec: &CrossSpec,
    um: &UnitTangentHomology,
    pmax: usize,
) -> BTreeMap<(usize, i64), Entry> {
    let n = spec.n;
    let mut entries = BTreeMap::new();
    for k in 0..=n {
        let orders = spec.hm.get(k).orders();
        if !orders.is_empty() {
            entries.insert(
                (0, k as i64 - n as i64),
                Entry {
                    source_degree: k,
                    orders,
                },
            );
        }
    }
    for p in 1..=pmax {
        for j in 0..2 * n {
            let orders = um.groups.get(j).orders();
            if !orders.is_empty() {
                entries.insert(
                    (p, thom_row(spec, p, j)),
                    Entry {
                        source_degree: j,
                        orders,
                    },
                );
            }
        }
    }
    entries
}

pub fn build_page1(spec: &CrossSpec, pmax: usize) -> Result<SpectralPage> {
    if pmax == 0 {
        return Err(Error::Structure("a page needs at least column 1".into()));
    }
    let um = gysin_unit_tangent_homology(spec)?;
    let base = GeneratorRing::new(Space::Base, &spec.hm, &spec.m_products)?;
    let tangent = GeneratorRing::new(Space::UnitTangent, &um.groups, &spec.um_products)?;
    base.check_axioms()?;
    tangent.check_axioms()?;
    let page = SpectralPage {
        page: PageIndex::Finite(1),
        n: spec.n,
        pmax,
        entries: page_entries(spec, &um, pmax),
        base,
        tangent,
        um,
    };
    page.check_module()?;
    Ok(page)
}

impl SpectralPage {
    pub fn generators(&self) -> impl Iterator<Item = PageElement> + '_ {
        self.entries.iter().flat_map(|(&(p, q), e)| {
            (0..e.orders.len()).map(move |i| {
                let mut coords = vec![0; e.orders.len()];
                coords[i] = 1;
                PageElement { p, q, coords }
            })
        })
    }

    pub fn zero(&self, p: usize, q: i64) -> PageElement {
        let width = self.entries.get(&(p, q)).map_or(0, |e| e.orders.len());
        PageElement {
            p,
            q,
            coords: vec![0; width],
        }
    }

    fn orders(&self, p: usize, q: i64) -> &[u64] {
        self.entries
            .get(&(p, q))
            .map_or(&[], |e| e.orders.as_slice())
    }

    fn source_degree(&self, p: usize, q: i64) -> Option<usize> {
        self.entries.get(&(p, q)).map(|e| e.source_degree)
    }

    fn normalized(&self, mut x: PageElement) -> PageElement {
        reduce(&mut x.coords, self.orders(x.p, x.q));
        x
    }

    /// The unit: the fundamental class of `M` in `E_{0,0}`.
    pub fn unit(&self) -> PageElement {
        let mut u = self.zero(0, 0);
        u.coords[0] = 1;
        u
    }

    /// `T^p`: the fundamental class of `UM` in column `p`.
    pub fn t_power(&self, p: usize) -> PageElement {
        let q = (p as i64) * (self.t_row());
        let mut t = self.zero(p, q);
        if !t.coords.is_empty() && self.source_degree(p, q) == Some(2 * self.n - 1) {
            t.coords[0] = 1;
        }
        t
    }

    fn t_row(&self) -> i64 {
        // q of T, read off column 1 from the top class of UM.
        self.entries
            .iter()
            .find(|(&(p, _), e)| p == 1 && e.source_degree == 2 * self.n - 1)
            .map(|(&(_, q), _)| q)
            .expect("UM has a top class")
    }

    fn gysin(&self, k: usize, x: &[i64]) -> Result<Vec<i64>> {
        let target = k + self.n - 1;
        let mut out = vec![0; self.um.groups.get(target).generator_count()];
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, v) in out.iter_mut().zip(self.um.image(k, i)?) {
                *o += c * v;
            }
        }
        reduce(&mut out, self.tangent.orders(target));
        Ok(out)
    }

    /// The Gysin morphism must be a ring map for the module structure to
    /// be compatible with the products.
    fn check_module(&self) -> Result<()> {
        let n = self.n;
        for k in 0..=n {
            for i in 0..self.base.orders(k).len() {
                for l in 0..=n {
                    for j in 0..self.base.orders(l).len() {
                        let Some(kl) = (k + l).checked_sub(n) else {
                            continue;
                        };
                        let mut a = vec![0; self.base.orders(k).len()];
                        a[i] = 1;
                        let mut b = vec![0; self.base.orders(l).len()];
                        b[j] = 1;
                        let ab = self.base.product(k, &a, l, &b)?.expect("degree checked");
                        let left = self.gysin(kl, &ab)?;
                        let right = self
                            .tangent
                            .product(
                                k + n - 1,
                                &self.gysin(k, &a)?,
                                l + n - 1,
                                &self.gysin(l, &b)?,
                            )?
                            .expect("degree checked");
                        if left != right {
                            return Err(Error::Structure(format!(
                                "the Gysin morphism does not carry m{k}.{i} · m{l}.{j} to the product of the images"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Page product; `None` past column `pmax` or below the bottom row.
    pub fn product(&self, x: &PageElement, y: &PageElement) -> Result<Option<PageElement>> {
        let p = x.p + y.p;
        if p > self.pmax {
            return Ok(None);
        }
        let q = x.q + y.q;
        let n = self.n;
        let (Some(i), Some(j)) = (self.source_degree(x.p, x.q), self.source_degree(y.p, y.q))
        else {
            return Ok(Some(self.zero(p, q)));
        };
        let coords = match (x.p, y.p) {
            (0, 0) => self.base.product(i, &x.coords, j, &y.coords)?,
            (0, _) => self
                .tangent
                .product(i + n - 1, &self.gysin(i, &x.coords)?, j, &y.coords)?,
            (_, 0) => self
                .tangent
                .product(i, &x.coords, j + n - 1, &self.gysin(j, &y.coords)?)?,
            _ => self.tangent.product(i, &x.coords, j, &y.coords)?,
        };
        let Some(coords) = coords else {
            return Ok(Some(self.zero(p, q)));
        };
        if coords.len() != self.orders(p, q).len() {
            return Err(Error::Structure(format!(
                "product of ({}, {}) and ({}, {}) does not land in E_({p}, {q})",
                x.p, x.q, y.p, y.q
            )));
        }
        Ok(Some(self.normalized(PageElement { p, q, coords })))
    }

    fn add(&self, x: &PageElement, y: &PageElement, sign: i64) -> PageElement {
        debug_assert_eq!((x.p, x.q), (y.p, y.q));
        self.normalized(PageElement {
            p: x.p,
            q: x.q,
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .map(|(a, b)| a + sign * b)
                .collect(),
        })
    }

    /// Associativity and two-sided unit on all generator triples inside
    /// the truncation.
    pub fn check_ring_axioms(&self) -> Result<()> {
        let gens: Vec<PageElement> = self.generators().collect();
        let unit = self.unit();
        for g in &gens {
            if self.product(&unit, g)?.as_ref() != Some(g)
                || self.product(g, &unit)?.as_ref() != Some(g)
            {
                return Err(Error::Structure(format!(
                    "unit fails on a generator of E_({}, {})",
                    g.p, g.q
                )));
            }
        }
        for a in &gens {
            for b in &gens {
                let Some(ab) = self.product(a, b)? else {
                    continue;
                };
                for c in &gens {
                    if a.p + b.p + c.p > self.pmax {
                        continue;
                    }
                    let bc = self.product(b, c)?.expect("inside the truncation");
                    let left = self.product(&ab, c)?;
                    let right = self.product(a, &bc)?;
                    if left != right {
                        return Err(Error::Structure(format!(
                            "products of generators in columns {}, {}, {} are not associative",
                            a.p, b.p, c.p
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Why `d^r` vanishes on a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vanishing {
    /// The target column is negative.
    OutOfRange,
    /// `d¹` from column 1 to the constant loops, a direct factor.
    DirectFactor,
    /// Forced by the derivation law from a factorization `(xT)·T^{p-1}`.
    Derivation,
}

/// `d^r : E_{p,q} → E_{p-r, q+r-1}` on generators.
#[derive(Clone, Debug)]
pub struct Differential {
    pub r: usize,
    pub images: BTreeMap<(usize, i64, usize), PageElement>,
    pub reasons: BTreeMap<(usize, i64, usize), Vanishing>,
}

impl Differential {
    pub fn is_zero(&self) -> bool {
        self.images.values().all(PageElement::is_zero)
    }

    /// `d^r(x)`, or `None` when the target column is negative.
    pub fn apply(&self, page: &SpectralPage, x: &PageElement) -> Option<PageElement> {
        let mut out = self.target(page, x.p, x.q)?;
        for (i, &c) in x.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if let Some(img) = self.images.get(&(x.p, x.q, i)) {
                out = page.add(&out, img, c);
            }
        }
        Some(out)
    }

    fn target(&self, page: &SpectralPage, p: usize, q: i64) -> Option<PageElement> {
        let tp = p.checked_sub(self.r)?;
        Some(page.zero(tp, q + self.r as i64 - 1))
    }
}

/// `d^r` as forced by the argument: it vanishes on columns below `r` for
/// range reasons, on column 1 for `r = 1` because the constant loops split
/// off, and on `xT^p = (xT)·T^{p-1}` by the derivation law.
pub fn differential(page: &SpectralPage, r: usize) -> Result<Differential> {
    if r == 0 {
        return Err(Error::Structure("differentials start at page 1".into()));
    }
    let mut d = Differential {
        r,
        images: BTreeMap::new(),
        reasons: BTreeMap::new(),
    };
    let gens: Vec<PageElement> = page.generators().collect();
    // Generators come column by column, so the factors are already known.
    for g in &gens {
        let i = g.coords.iter().position(|&c| c == 1).expect("generator");
        let key = (g.p, g.q, i);
        let Some(zero) = d.target(page, g.p, g.q) else {
            d.reasons.insert(key, Vanishing::OutOfRange);
            continue;
        };
        if g.p == 1 {
            d.images.insert(key, zero);
            d.reasons.insert(key, Vanishing::DirectFactor);
            continue;
        }
        let tail = page.t_power(g.p - 1);
        let head = PageElement {
            p: 1,
            q: g.q - tail.q,
            coords: g.coords.clone(),
        };
        if page.product(&head, &tail)?.as_ref() != Some(g) {
            return Err(Error::Structure(format!(
                "generator of E_({}, {}) is not (xT)·T^{}",
                g.p,
                g.q,
                g.p - 1
            )));
        }
        // d(ab) = d(a)b + (-1)^{|a|} a d(b)
        let mut out = zero;
        if let Some(da) = d.apply(page, &head) {
            if let Some(x) = page.product(&da, &tail)? {
                out = page.add(&out, &x, 1);
            }
        }
        if let Some(db) = d.apply(page, &tail) {
            if let Some(x) = page.product(&head, &db)? {
                out = page.add(&out, &x, parity(head.total_degree()));
            }
        }
        d.images.insert(key, out);
        d.reasons.insert(key, Vanishing::Derivation);
    }
    Ok(d)
}

fn parity(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn differential_d1(page: &SpectralPage) -> Result<Differential> {
    differential(page, 1)
}

/// Checks `d∘d = 0` and `d(xy) = d(x)y + (-1)^{p+q} x d(y)` on all pairs of
/// generators inside the truncation.
pub fn check_differential(page: &SpectralPage, d: &Differential) -> Result<()> {
    let gens: Vec<PageElement> = page.generators().collect();
    for g in &gens {
        if let Some(dg) = d.apply(page, g) {
            if d.apply(page, &dg).is_some_and(|x| !x.is_zero()) {
                return Err(Error::Structure(format!(
                    "d^{} squared is nonzero on E_({}, {})",
                    d.r, g.p, g.q
                )));
            }
        }
    }
    for a in &gens {
        for b in &gens {
            let Some(ab) = page.product(a, b)? else {
                continue;
            };
            let Some(lhs) = d.apply(page, &ab) else {
                continue;
            };
            let mut rhs = page.zero(lhs.p, lhs.q);
            if let Some(da) = d.apply(page, a) {
                if let Some(x) = page.product(&da, b)? {
                    rhs = page.add(&rhs, &x, 1);
                }
            }
            if let Some(db) = d.apply(page, b) {
                if let Some(x) = page.product(a, &db)? {
                    rhs = page.add(&rhs, &x, parity(a.total_degree()));
                }
            }
            if lhs != rhs {
                return Err(Error::Structure(format!(
                    "d^{} is not a derivation on E_({}, {}) x E_({}, {})",
                    d.r, a.p, a.q, b.p, b.q
                )));
            }
        }
    }
    Ok(())
}

/// `E^∞` of the truncated page: every `d^r` with `r <= pmax` is derived and
/// must vanish, after which `E^{r+1} = E^r` as bigraded rings.
pub fn collapse_to_infinity(page1: &SpectralPage) -> Result<SpectralPage> {
    let mut page = page1.clone();
    for r in 1..=page1.pmax {
        page.page = PageIndex::Finite(r);
        let d = differential(&page, r)?;
        check_differential(&page, &d)?;
        if !d.is_zero() {
            return Err(Error::Structure(format!(
                "d^{r} is nonzero; its homology is not computed"
            )));
        }
    }
    page.page = PageIndex::Infinity;
    Ok(page)
}
