//! The fixing group `G_f = {u : f ∘ u = f}` of a rational function.
//!
//! After normalizing `f' = u ∘ f ∘ v` (numerator degree above denominator
//! degree, `f'_N(0) = 0`) every `w` fixing `f'` is either affine `αx + β` with
//! `α^n = 1` and `f'_N(β) = 0`, or `(cγx + β)/(cx + 1)` with `f'_N(β) = 0`,
//! `f'_D(γ) = 0`. Both families are finite and searched exactly; the answer
//! is conjugated back by `v`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::fixedfield::fixed_field_generator;
use crate::moebius::{all_units, KleinType, MoebiusUnit, UnitGroup};
use crate::poly::Poly;
use crate::ratfun::{NormalForm, RatFun};

/// Limit on `q³ - q` for the exhaustive oracle.
pub const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

/// Default bound on the extension degree tried when `F_q` is too small to
/// normalize the input.
pub const DEFAULT_MAX_EXTENSION: u32 = 3;

/// Stage of the fixing-group computation, used for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// Normalization.
    A,
    /// Roots of unity and of numerator and denominator.
    B,
    /// Affine candidates.
    C,
    /// Fractional candidates.
    D,
    /// Conjugation back to the input.
    E,
}

impl Stage {
    pub fn describe(self) -> &'static str {
        match self {
            Stage::A => "A (normal form)",
            Stage::B => "B (root sets)",
            Stage::C => "C (affine candidates)",
            Stage::D => "D (fractional candidates)",
            Stage::E => "E (conjugation)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageError {
    pub stage: Stage,
    pub error: Error,
}

impl std::fmt::Display for StageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "stage {}: {}", self.stage.describe(), self.error)
    }
}

impl std::error::Error for StageError {}

impl From<StageError> for Error {
    fn from(e: StageError) -> Error {
        e.error
    }
}

trait AtStage<T> {
    fn at(self, stage: Stage) -> std::result::Result<T, StageError>;
}

impl<T> AtStage<T> for Result<T> {
    fn at(self, stage: Stage) -> std::result::Result<T, StageError> {
        self.map_err(|error| StageError { stage, error })
    }
}

/// Solutions of the fractional search at one `(β, γ)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalSolutions {
    pub beta: FieldElement,
    pub gamma: FieldElement,
    pub c_values: Vec<FieldElement>,
    pub units: Vec<MoebiusUnit>,
}

/// Everything the algorithm computed on its way to `G_f`.
#[derive(Debug, Clone)]
pub struct FixingTrace {
    /// The field the search ran over (`F_{q^e}` after escalation).
    pub working_field: Field,
    pub extension_degree: u32,
    pub normal_form: NormalForm,
    pub roots_of_unity: Vec<FieldElement>,
    pub numerator_roots: Vec<FieldElement>,
    pub denominator_roots: Vec<FieldElement>,
    pub affine_units: Vec<MoebiusUnit>,
    pub fractional: Vec<FractionalSolutions>,
    /// `G_{f'}` over the working field.
    pub normalized_group: UnitGroup,
    /// `G_f` over the input field.
    pub group: UnitGroup,
}

#[derive(Debug, Clone, Copy)]
pub struct FixingOptions {
    pub max_extension: u32,
}

impl Default for FixingOptions {
    fn default() -> Self {
        FixingOptions { max_extension: DEFAULT_MAX_EXTENSION }
    }
}

fn is_fixed_by(f: &RatFun, u: &MoebiusUnit) -> bool {
    f.compose(&u.to_ratfun()).is_ok_and(|g| g == *f)
}

/// Affine units `αx + β` fixing `fprime`, with `α^n = 1` and `β` a root of
/// the numerator.
pub fn polynomial_unit_candidates(fprime: &RatFun) -> Result<Vec<MoebiusUnit>> {
    if !fprime.is_normal_form() {
        return Err(Error::NotNormalForm);
    }
    let alphas = fprime.field().nth_roots_of_unity(fprime.degree() as u64);
    let betas = fprime.num().roots()?;
    Ok(affine_search(fprime, &alphas, &betas))
}

fn affine_search(fprime: &RatFun, alphas: &[FieldElement], betas: &[FieldElement]) -> Vec<MoebiusUnit> {
    let mut out = Vec::new();
    for alpha in alphas {
        for beta in betas {
            let w = MoebiusUnit::affine(alpha.clone(), beta.clone()).expect("alpha is nonzero");
            if is_fixed_by(fprime, &w) {
                out.push(w);
            }
        }
    }
    out
}

/// All units `(cγx + β)/(cx + 1)` with `c ≠ 0` fixing `fprime`.
///
/// Writing `s = cx`, the numerator and denominator of `f' ∘ w` cleared of
/// `(cx+1)^n` are `A(cx)` and `B(cx)` for univariate `A`, `B`. The identity
/// `A(cx) f'_D(x) = B(cx) f'_N(x)` splits into one polynomial in `c` per power
/// of `x`; the admissible `c` are the nonzero common roots.
pub fn fractional_unit_solve(fprime: &RatFun, beta: &FieldElement, gamma: &FieldElement) -> Result<FractionalSolutions> {
    if !fprime.is_normal_form() {
        return Err(Error::NotNormalForm);
    }
    let field = fprime.field().clone();
    if !fprime.num().eval(beta).is_zero() || !fprime.den().eval(gamma).is_zero() {
        return Err(Error::Internal("beta must be a numerator root and gamma a denominator root".into()));
    }
    if beta == gamma {
        return Err(Error::Internal("numerator and denominator share a root".into()));
    }
    let n = fprime.degree();
    let (a, b) = crate::ratfun::homogeneous_compose(
        fprime.num(),
        fprime.den(),
        n,
        &Poly::linear(gamma.clone(), beta.clone()),
        &Poly::linear(field.one(), field.one()),
    );
    let (fn_, fd) = (fprime.num(), fprime.den());
    let top = a.deg0().max(b.deg0()) + fn_.deg0().max(fd.deg0());
    let mut common = Poly::zero(&field);
    for k in 0..=top {
        let coeffs: Vec<FieldElement> = (0..=k)
            .map(|j| &(&a.coeff(j) * &fd.coeff(k - j)) - &(&b.coeff(j) * &fn_.coeff(k - j)))
            .collect();
        common = common.gcd(&Poly::new(&field, coeffs))?;
    }
    if common.is_zero() {
        return Err(Error::DegenerateIdentity);
    }
    let c_values: Vec<FieldElement> = common.roots()?.into_iter().filter(|c| !c.is_zero()).collect();
    let mut units = Vec::new();
    for c in &c_values {
        let w = MoebiusUnit::new(c * gamma, beta.clone(), c.clone(), field.one())?;
        if !is_fixed_by(fprime, &w) {
            return Err(Error::Internal(format!("c = {c} solves the system but {w} does not fix f'")));
        }
        units.push(w);
    }
    Ok(FractionalSolutions { beta: beta.clone(), gamma: gamma.clone(), c_values, units })
}

/// `G_f` over the field of `f`.
pub fn fixing_group(f: &RatFun) -> Result<UnitGroup> {
    Ok(fixing_group_traced(f, FixingOptions::default())?.group)
}

/// `G_f` together with the intermediate data of every stage.
pub fn fixing_group_traced(f: &RatFun, opts: FixingOptions) -> std::result::Result<FixingTrace, StageError> {
    if f.is_constant() {
        return Err(Error::ConstantInput).at(Stage::A);
    }
    let base = f.field().clone();
    match f.normal_form() {
        Ok(nf) => run_normalized(f, nf, &base, 1, None),
        Err(Error::FieldTooSmall(q)) => {
            for e in 2..=opts.max_extension {
                let ext = Extension::new(&base, e).at(Stage::A)?;
                let lifted = f.map_coeffs(&ext.field, |c| ext.embed(c)).at(Stage::A)?;
                match lifted.normal_form() {
                    Ok(nf) => return run_normalized(&lifted, nf, &base, e, Some(&ext)),
                    Err(Error::FieldTooSmall(_)) => continue,
                    Err(err) => return Err(err).at(Stage::A),
                }
            }
            Err(Error::FieldTooSmall(q)).at(Stage::A)
        }
        Err(err) => Err(err).at(Stage::A),
    }
}

fn run_normalized(
    f: &RatFun,
    nf: NormalForm,
    base: &Field,
    extension_degree: u32,
    ext: Option<&Extension>,
) -> std::result::Result<FixingTrace, StageError> {
    let working = f.field().clone();
    let fprime = nf.normalized.clone();
    let n = fprime.degree();

    let roots_of_unity = working.nth_roots_of_unity(n as u64);
    let numerator_roots = fprime.num().roots().at(Stage::B)?;
    let denominator_roots = if fprime.den().is_constant() { Vec::new() } else { fprime.den().roots().at(Stage::B)? };

    let affine_units = affine_search(&fprime, &roots_of_unity, &numerator_roots);

    let mut fractional = Vec::new();
    for beta in &numerator_roots {
        for gamma in &denominator_roots {
            fractional.push(fractional_unit_solve(&fprime, beta, gamma).at(Stage::D)?);
        }
    }

    let mut found: Vec<MoebiusUnit> = affine_units.clone();
    found.extend(fractional.iter().flat_map(|s| s.units.iter().cloned()));
    let normalized_group = UnitGroup::new(&working, found).at(Stage::E)?;

    let conjugated = normalized_group.conjugate(&nf.right);
    let group = match ext {
        None => conjugated,
        Some(ext) => {
            let (field, units) = (base.clone(), conjugated.elements().iter().filter_map(|u| ext.restrict(u)).collect());
            UnitGroup::new(&field, units).at(Stage::E)?
        }
    };

    let original = match ext {
        None => f.clone(),
        Some(ext) => f.map_coeffs(base, |c| ext.restrict_element(c).expect("input has base coefficients")).at(Stage::E)?,
    };
    check_fixing_group(&original, &group).at(Stage::E)?;
    Ok(FixingTrace {
        working_field: working,
        extension_degree,
        normal_form: nf,
        roots_of_unity,
        numerator_roots,
        denominator_roots,
        affine_units,
        fractional,
        normalized_group,
        group,
    })
}

fn check_fixing_group(f: &RatFun, group: &UnitGroup) -> Result<()> {
    if let Some(u) = group.elements().iter().find(|u| !is_fixed_by(f, u)) {
        return Err(Error::Internal(format!("{u} does not fix {f}")));
    }
    if f.degree() % group.order() != 0 {
        return Err(Error::Internal(format!("|G_f| = {} does not divide deg f = {}", group.order(), f.degree())));
    }
    Ok(())
}

/// `G_f` by testing every unit of `Γ(F_q)`.
pub fn brute_force_fixing_group(f: &RatFun) -> Result<UnitGroup> {
    let field = f.field().clone();
    let q = field.size().ok_or(Error::InfiniteField)?;
    if q.saturating_pow(3) - q > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(format!("{} units over {field}", q * q * q - q)));
    }
    let fixing: Vec<MoebiusUnit> = all_units(&field)?.into_iter().filter(|u| is_fixed_by(f, u)).collect();
    UnitGroup::new(&field, fixing)
}

/// `|G| = deg f`, a certificate that `K(f) ⊂ K(x)` is normal.
pub fn normality_flag(f: &RatFun, group: &UnitGroup) -> bool {
    group.order() == f.degree()
}

/// The end-to-end report: `G_f`, its type, and when nontrivial a component
/// `h` generating `Fix(G_f)` together with the left factor `g`, `f = g ∘ h`.
#[derive(Debug, Clone)]
pub struct FixingReport {
    pub trace: FixingTrace,
    pub classification: KleinType,
    pub normal_certified: bool,
    pub generator: Option<RatFun>,
    pub left_factor: Option<RatFun>,
}

pub fn fixing_report(f: &RatFun, opts: FixingOptions) -> std::result::Result<FixingReport, StageError> {
    let trace = fixing_group_traced(f, opts)?;
    let group = &trace.group;
    let classification = group.classify();
    let normal_certified = normality_flag(f, group);
    let (generator, left_factor) = if group.order() > 1 {
        let h = fixed_field_generator(group).at(Stage::E)?;
        let g = f.left_factor(&h);
        (Some(h), g)
    } else {
        (None, None)
    };
    Ok(FixingReport { trace, classification, normal_certified, generator, left_factor })
}

/// `F_{q^e}` together with an embedding of `F_q`.
struct Extension {
    field: Field,
    /// Image of every base element, indexed by base code.
    images: Vec<FieldElement>,
    base: Field,
}

impl Extension {
    fn new(base: &Field, e: u32) -> Result<Extension> {
        let p = base.characteristic() as u32;
        let n = base.degree();
        let field = Field::galois(p, n * e)?;
        let base_elems = base.elements()?;
        let images: Vec<FieldElement> = if n == 1 {
            base_elems.iter().map(|c| field.from_i64(c.code().unwrap() as i64)).collect()
        } else {
            // Send the base generator to a root of the base modulus.
            let crate::field::FieldDescriptor::Extension { modulus, .. } = base.descriptor() else {
                unreachable!()
            };
            let m = Poly::new(&field, modulus.iter().map(|&c| field.from_i64(c as i64)).collect());
            let root = m.roots()?.into_iter().next().ok_or_else(|| Error::Internal("modulus has no root in extension".into()))?;
            base_elems
                .iter()
                .map(|c| {
                    let digits = c.digits().unwrap();
                    digits.iter().rev().fold(field.zero(), |acc, &d| &(&acc * &root) + &field.from_i64(d as i64))
                })
                .collect()
        };
        let distinct: HashSet<&FieldElement> = images.iter().collect();
        if distinct.len() != images.len() {
            return Err(Error::Internal("embedding is not injective".into()));
        }
        Ok(Extension { field, images, base: base.clone() })
    }

    fn embed(&self, c: &FieldElement) -> FieldElement {
        self.images[c.code().unwrap() as usize].clone()
    }

    fn restrict_element(&self, c: &FieldElement) -> Option<FieldElement> {
        let code = self.images.iter().position(|img| img == c)?;
        self.base.from_code(code as u32).ok()
    }

    /// The unit over the base field, when its canonical entries lie there.
    fn restrict(&self, u: &MoebiusUnit) -> Option<MoebiusUnit> {
        let [a, b, c, d] = u.entries().map(|e| self.restrict_element(e));
        MoebiusUnit::new(a?, b?, c?, d?).ok()
    }
}
