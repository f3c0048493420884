//! Möbius units `(ax+b)/(cx+d)` and finite groups of them.
//!
//! A unit is stored as its 2×2 matrix scaled so that the first nonzero entry
//! among `(a, b, c, d)` is 1, which makes structural equality agree with
//! equality in `PGL_2(K)`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::Poly;
use crate::ratfun::{ProjectivePoint, RatFun};

/// Default bound on the size of a generated group.
pub const DEFAULT_CLOSURE_CAP: usize = 1000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoebiusUnit {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    d: FieldElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitOrder {
    Finite(usize),
    Infinite,
}

impl MoebiusUnit {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Self> {
        let field = a.field();
        if [&b, &c, &d].iter().any(|e| e.field() != field) {
            return Err(Error::MixedFields);
        }
        if (&(&a * &d) - &(&b * &c)).is_zero() {
            return Err(Error::NotAUnit(0));
        }
        let lead = [&a, &b, &c, &d].into_iter().find(|e| !e.is_zero()).unwrap().clone();
        if lead.is_one() {
            return Ok(MoebiusUnit { a, b, c, d });
        }
        let s = lead.inv()?;
        Ok(MoebiusUnit { a: &a * &s, b: &b * &s, c: &c * &s, d: &d * &s })
    }

    pub fn identity(field: &Field) -> Self {
        MoebiusUnit { a: field.one(), b: field.zero(), c: field.zero(), d: field.one() }
    }

    /// `x ↦ a*x + b`
    pub fn affine(a: FieldElement, b: FieldElement) -> Result<Self> {
        let field = a.field().clone();
        MoebiusUnit::new(a, b, field.zero(), field.one())
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    /// Canonical entries `(a, b, c, d)`.
    pub fn entries(&self) -> [&FieldElement; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn is_affine(&self) -> bool {
        self.c.is_zero()
    }

    pub fn to_ratfun(&self) -> RatFun {
        let field = self.field();
        RatFun::make(
            Poly::new(field, vec![self.b.clone(), self.a.clone()]),
            Poly::new(field, vec![self.d.clone(), self.c.clone()]),
        )
        .expect("unit denominator is nonzero")
    }

    pub fn from_ratfun(f: &RatFun) -> Result<Self> {
        if f.degree() != 1 {
            return Err(Error::NotAUnit(f.degree()));
        }
        let (n, d) = (f.num(), f.den());
        MoebiusUnit::new(n.coeff(1), n.coeff(0), d.coeff(1), d.coeff(0))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MoebiusUnit) -> MoebiusUnit {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&other.a, &other.b, &other.c, &other.d);
        MoebiusUnit::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
            .expect("product of invertible matrices")
    }

    pub fn inverse(&self) -> MoebiusUnit {
        MoebiusUnit::new(self.d.clone(), -&self.b, -&self.c, self.a.clone()).expect("adjugate is invertible")
    }

    /// `self ∘ w ∘ self⁻¹`
    pub fn conjugate(&self, w: &MoebiusUnit) -> MoebiusUnit {
        self.compose(w).compose(&self.inverse())
    }

    /// Least `k <= cap` with `self^k = id`.
    pub fn order(&self, cap: usize) -> UnitOrder {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return UnitOrder::Finite(k);
            }
            acc = acc.compose(self);
        }
        UnitOrder::Infinite
    }

    pub fn apply(&self, point: &ProjectivePoint) -> ProjectivePoint {
        match point {
            ProjectivePoint::Infinity if self.c.is_zero() => ProjectivePoint::Infinity,
            ProjectivePoint::Infinity => ProjectivePoint::Finite(&self.a / &self.c),
            ProjectivePoint::Finite(x) => {
                let den = &(&self.c * x) + &self.d;
                if den.is_zero() {
                    ProjectivePoint::Infinity
                } else {
                    ProjectivePoint::Finite(&(&(&self.a * x) + &self.b) / &den)
                }
            }
        }
    }
}

impl fmt::Display for MoebiusUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratfun())
    }
}

impl fmt::Debug for MoebiusUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Unit({self})")
    }
}

/// Isomorphism types of finite subgroups of `PGL_2(C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KleinType {
    Cyclic(usize),
    /// Carries the group order: `Dihedral(2m)` contains a cyclic subgroup of order `m`.
    Dihedral(usize),
    Tetrahedral,
    Octahedral,
    Icosahedral,
    Unrecognized,
}

impl fmt::Display for KleinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KleinType::Cyclic(n) => write!(f, "Cyclic({n})"),
            KleinType::Dihedral(n) => write!(f, "Dihedral({n})"),
            KleinType::Tetrahedral => write!(f, "Tetrahedral"),
            KleinType::Octahedral => write!(f, "Octahedral"),
            KleinType::Icosahedral => write!(f, "Icosahedral"),
            KleinType::Unrecognized => write!(f, "Unrecognized"),
        }
    }
}

/// A finite group of units, closed under composition and inverses.
/// Elements are listed identity first, the rest in canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct UnitGroup {
    field: Field,
    elements: Vec<MoebiusUnit>,
}

impl UnitGroup {
    /// Check the group axioms on `elements` (duplicates are dropped).
    pub fn new(field: &Field, elements: Vec<MoebiusUnit>) -> Result<Self> {
        if elements.iter().any(|u| u.field() != field) {
            return Err(Error::MixedFields);
        }
        let set: HashSet<MoebiusUnit> = elements.iter().cloned().collect();
        if !set.contains(&MoebiusUnit::identity(field)) {
            return Err(Error::NotAGroup("identity missing".into()));
        }
        for g in &set {
            if !set.contains(&g.inverse()) {
                return Err(Error::NotAGroup(format!("inverse of {g} missing")));
            }
            for h in &set {
                let gh = g.compose(h);
                if !set.contains(&gh) {
                    return Err(Error::NotAGroup(format!("{g} ∘ {h} = {gh} missing")));
                }
            }
        }
        Ok(UnitGroup::from_set(field, set))
    }

    fn from_set(field: &Field, set: HashSet<MoebiusUnit>) -> Self {
        let id = MoebiusUnit::identity(field);
        let mut rest: Vec<MoebiusUnit> = set.into_iter().filter(|u| *u != id).collect();
        rest.sort();
        let mut elements = vec![id];
        elements.extend(rest);
        UnitGroup { field: field.clone(), elements }
    }

    pub fn trivial(field: &Field) -> Self {
        UnitGroup { field: field.clone(), elements: vec![MoebiusUnit::identity(field)] }
    }

    /// The group generated by `generators`, failing once it exceeds `cap` elements.
    pub fn closure(field: &Field, generators: &[MoebiusUnit], cap: usize) -> Result<Self> {
        if generators.iter().any(|u| u.field() != field) {
            return Err(Error::MixedFields);
        }
        let id = MoebiusUnit::identity(field);
        let mut seen: HashSet<MoebiusUnit> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in generators {
                let h = g.compose(s);
                if seen.insert(h.clone()) {
                    if seen.len() > cap {
                        return Err(Error::ClosureCapExceeded(cap));
                    }
                    queue.push_back(h);
                }
            }
        }
        // A finite set containing 1 and stable under right multiplication by
        // every generator is the generated group.
        Ok(UnitGroup::from_set(field, seen))
    }

    /// `Γ₀(F_q)` when `linear_only`, else all of `Γ(F_q)`, the latter built
    /// as the closure of `Γ₀(F_q)` and `1/x`.
    pub fn enumerate(field: &Field, linear_only: bool) -> Result<Self> {
        let q = field.size().ok_or(Error::InfiniteField)?;
        if q > 16 {
            return Err(Error::TooLarge(format!("enumerating units over {field}")));
        }
        let elems = field.elements()?;
        let mut affine = Vec::new();
        for a in elems.iter().filter(|a| !a.is_zero()) {
            for b in &elems {
                affine.push(MoebiusUnit::affine(a.clone(), b.clone())?);
            }
        }
        if linear_only {
            return UnitGroup::new(field, affine);
        }
        let mut gens = affine;
        gens.push(MoebiusUnit::new(field.zero(), field.one(), field.one(), field.zero())?);
        UnitGroup::closure(field, &gens, (q * q * q) as usize)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elements(&self) -> &[MoebiusUnit] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, u: &MoebiusUnit) -> bool {
        self.elements.contains(u)
    }

    pub fn is_subgroup_of(&self, other: &UnitGroup) -> bool {
        self.elements.iter().all(|u| other.contains(u))
    }

    /// `{v ∘ w ∘ v⁻¹ : w ∈ self}`
    pub fn conjugate(&self, v: &MoebiusUnit) -> UnitGroup {
        let vinv = v.inverse();
        let set = self.elements.iter().map(|w| v.compose(w).compose(&vinv)).collect();
        UnitGroup::from_set(&self.field, set)
    }

    /// Whether `g H g⁻¹ = H` for every `g` in `ambient`.
    pub fn is_normal_in(&self, ambient: &UnitGroup) -> bool {
        ambient.elements.iter().all(|g| self.elements.iter().all(|h| self.contains(&g.conjugate(h))))
    }

    fn element_orders(&self) -> Vec<usize> {
        let n = self.order();
        self.elements
            .iter()
            .map(|u| match u.order(n) {
                UnitOrder::Finite(k) => k,
                UnitOrder::Infinite => unreachable!("element order exceeds group order"),
            })
            .collect()
    }

    /// Identify the group among the five Klein types from element orders.
    pub fn classify(&self) -> KleinType {
        let n = self.order();
        let orders = self.element_orders();
        if orders.contains(&n) {
            return KleinType::Cyclic(n);
        }
        if n % 2 == 0 {
            let m = n / 2;
            for (r, _) in self.elements.iter().zip(&orders).filter(|(_, &o)| o == m) {
                let rotations: HashSet<MoebiusUnit> = std::iter::successors(Some(r.clone()), |g| {
                    let next = g.compose(r);
                    (next != *r).then_some(next)
                })
                .collect();
                let r_inv = r.inverse();
                let reflection = self.elements.iter().zip(&orders).any(|(s, &o)| {
                    o == 2 && !rotations.contains(s) && s.conjugate(r) == r_inv
                });
                if reflection {
                    return KleinType::Dihedral(n);
                }
            }
        }
        let mut histogram: HashMap<usize, usize> = HashMap::new();
        for o in orders {
            *histogram.entry(o).or_default() += 1;
        }
        let matches = |expected: &[(usize, usize)]| {
            histogram.len() == expected.len() && expected.iter().all(|(o, c)| histogram.get(o) == Some(c))
        };
        match n {
            12 if matches(&[(1, 1), (2, 3), (3, 8)]) => KleinType::Tetrahedral,
            24 if matches(&[(1, 1), (2, 9), (3, 8), (4, 6)]) => KleinType::Octahedral,
            60 if matches(&[(1, 1), (2, 15), (3, 20), (5, 24)]) => KleinType::Icosahedral,
            _ => KleinType::Unrecognized,
        }
    }
}

/// Every unit over a finite field, by direct enumeration of canonical
/// matrices `(1, b, c, d)` with `d ≠ bc` and `(0, 1, c, d)` with `c ≠ 0`.
pub(crate) fn all_units(field: &Field) -> Result<Vec<MoebiusUnit>> {
    let elems = field.elements()?;
    let (zero, one) = (field.zero(), field.one());
    let mut out = Vec::new();
    for b in &elems {
        for c in &elems {
            for d in &elems {
                if *d != b * c {
                    out.push(MoebiusUnit { a: one.clone(), b: b.clone(), c: c.clone(), d: d.clone() });
                }
            }
        }
    }
    for c in elems.iter().filter(|c| !c.is_zero()) {
        for d in &elems {
            out.push(MoebiusUnit { a: zero.clone(), b: one.clone(), c: c.clone(), d: d.clone() });
        }
    }
    Ok(out)
}

impl fmt::Display for UnitGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|u| u.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for UnitGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnitGroup[{}]{self}", self.field)
    }
}
