//! Free modules over [`Scalar`] with named basis registries, tensor products
//! of registries, and linear maps given by their action on basis vectors.
//!
//! Registries know how their basis elements multiply, so an
//! [`AlgebraElement`] carries everything needed for products: Clifford and
//! E(n) leaves use their structure constants, `Opposite` reuses the same
//! basis and swaps the factors, and `Tensor` multiplies componentwise.
//! Tensor registries are kept flat (never nested), which makes `⊗`
//! strictly associative.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::clifford::{self, CliffordParams};
use crate::enhopf::{self, EnBasis};
use crate::scalar::Scalar;
use crate::setcombin::SubsetIndex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("registry mismatch: expected {expected}, got {got}")]
    RegistryMismatch { expected: String, got: String },
}

fn mismatch(expected: &BasisRegistry, got: &BasisRegistry) -> AlgebraError {
    AlgebraError::RegistryMismatch {
        expected: expected.to_string(),
        got: got.to_string(),
    }
}

/// A declared basis: Clifford monomials `X_R`, E(n) monomials `gʲx_P`, the
/// same basis with opposite multiplication, or a flat tensor product.
#[derive(Clone, Debug)]
pub enum BasisRegistry {
    Clifford(Arc<CliffordParams>),
    En(usize),
    Opposite(Box<BasisRegistry>),
    Tensor(Vec<BasisRegistry>),
}

impl PartialEq for BasisRegistry {
    fn eq(&self, other: &Self) -> bool {
        use BasisRegistry::*;
        match (self, other) {
            (Clifford(a), Clifford(b)) => Arc::ptr_eq(a, b) || a == b,
            (En(a), En(b)) => a == b,
            (Opposite(a), Opposite(b)) => a == b,
            (Tensor(a), Tensor(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for BasisRegistry {}

impl BasisRegistry {
    /// Flat tensor product of registries.
    pub fn tensor(parts: Vec<BasisRegistry>) -> BasisRegistry {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                BasisRegistry::Tensor(inner) => flat.extend(inner),
                leaf => flat.push(leaf),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            BasisRegistry::Tensor(flat)
        }
    }

    pub fn factors(&self) -> Vec<BasisRegistry> {
        match self {
            BasisRegistry::Tensor(v) => v.clone(),
            leaf => vec![leaf.clone()],
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            BasisRegistry::Tensor(v) => v.len(),
            _ => 1,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            BasisRegistry::Clifford(p) => 1 << (p.n() + 1),
            BasisRegistry::En(n) => 1 << (n + 1),
            BasisRegistry::Opposite(inner) => inner.dim(),
            BasisRegistry::Tensor(v) => v.iter().map(|r| r.dim()).product(),
        }
    }

    /// The full basis, in canonical order.
    pub fn basis(&self) -> Vec<BasisIndex> {
        match self {
            BasisRegistry::Clifford(p) => SubsetIndex::range(0, p.n() as u8)
                .subsets()
                .map(BasisIndex::Cl)
                .collect(),
            BasisRegistry::En(n) => SubsetIndex::range(1, *n as u8)
                .subsets()
                .flat_map(|p| [BasisIndex::En(EnBasis::new(0, p)), BasisIndex::En(EnBasis::new(1, p))])
                .collect(),
            BasisRegistry::Opposite(inner) => inner.basis(),
            BasisRegistry::Tensor(v) => {
                let mut acc: Vec<Vec<BasisIndex>> = vec![Vec::new()];
                for r in v {
                    let part = r.basis();
                    let mut next = Vec::with_capacity(acc.len() * part.len());
                    for prefix in &acc {
                        for idx in &part {
                            let mut t = prefix.clone();
                            t.push(idx.clone());
                            next.push(t);
                        }
                    }
                    acc = next;
                }
                acc.into_iter().map(BasisIndex::Tuple).collect()
            }
        }
    }

    /// Index of the algebra unit.
    pub fn unit_index(&self) -> BasisIndex {
        match self {
            BasisRegistry::Clifford(_) => BasisIndex::Cl(SubsetIndex::EMPTY),
            BasisRegistry::En(_) => BasisIndex::En(EnBasis::new(0, SubsetIndex::EMPTY)),
            BasisRegistry::Opposite(inner) => inner.unit_index(),
            BasisRegistry::Tensor(v) => {
                BasisIndex::Tuple(v.iter().map(|r| r.unit_index()).collect())
            }
        }
    }
}

impl fmt::Display for BasisRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisRegistry::Clifford(p) => write!(f, "Cl({})", p.n()),
            BasisRegistry::En(n) => write!(f, "E({n})"),
            BasisRegistry::Opposite(inner) => write!(f, "Op({inner})"),
            BasisRegistry::Tensor(v) => {
                for (k, r) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, "⊗")?;
                    }
                    write!(f, "{r}")?;
                }
                Ok(())
            }
        }
    }
}

/// Index of a basis vector in some registry.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BasisIndex {
    Cl(SubsetIndex),
    En(EnBasis),
    Tuple(Vec<BasisIndex>),
}

impl BasisIndex {
    pub fn as_cl(&self) -> SubsetIndex {
        match self {
            BasisIndex::Cl(s) => *s,
            other => panic!("expected a Clifford index, got {other}"),
        }
    }

    pub fn as_en(&self) -> EnBasis {
        match self {
            BasisIndex::En(b) => *b,
            other => panic!("expected an E(n) index, got {other}"),
        }
    }

    pub fn as_tuple(&self) -> &[BasisIndex] {
        match self {
            BasisIndex::Tuple(v) => v,
            other => std::slice::from_ref(other),
        }
    }

    fn from_parts(reg: &BasisRegistry, parts: &[BasisIndex]) -> BasisIndex {
        if reg.arity() == 1 {
            debug_assert_eq!(parts.len(), 1);
            parts[0].clone()
        } else {
            BasisIndex::Tuple(parts.to_vec())
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::Cl(s) => {
                if s.is_empty() {
                    return write!(f, "1");
                }
                for (k, e) in s.elements().enumerate() {
                    if k > 0 {
                        write!(f, ".")?;
                    }
                    if e == 0 {
                        write!(f, "G")?;
                    } else {
                        write!(f, "X{e}")?;
                    }
                }
                Ok(())
            }
            BasisIndex::En(b) => write!(f, "{b}"),
            BasisIndex::Tuple(v) => {
                for (k, idx) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, "⊗")?;
                    }
                    write!(f, "{idx}")?;
                }
                Ok(())
            }
        }
    }
}

/// A finite linear combination of basis vectors of one registry.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    registry: BasisRegistry,
    coeffs: BTreeMap<BasisIndex, Scalar>,
}

impl AlgebraElement {
    pub fn zero(registry: BasisRegistry) -> Self {
        AlgebraElement {
            registry,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(registry: BasisRegistry) -> Self {
        let unit = registry.unit_index();
        AlgebraElement::from_term(registry, unit, Scalar::one())
    }

    pub fn from_term(registry: BasisRegistry, index: BasisIndex, coeff: Scalar) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(index, coeff);
        }
        AlgebraElement { registry, coeffs }
    }

    pub fn from_terms(
        registry: BasisRegistry,
        terms: impl IntoIterator<Item = (BasisIndex, Scalar)>,
    ) -> Self {
        let mut out = AlgebraElement::zero(registry);
        for (idx, c) in terms {
            out.add_term(idx, c);
        }
        out
    }

    pub fn registry(&self) -> &BasisRegistry {
        &self.registry
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisIndex, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, index: &BasisIndex) -> Scalar {
        self.coeffs.get(index).cloned().unwrap_or_else(Scalar::zero)
    }

    pub(crate) fn add_term(&mut self, index: BasisIndex, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(index) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_same(&self, other: &AlgebraElement) {
        assert!(
            self.registry == other.registry,
            "registry mismatch: {} vs {}",
            self.registry,
            other.registry
        );
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        self.check_same(other);
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_term(idx.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            registry: self.registry.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(i, c)| (i.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> AlgebraElement {
        if k.is_zero() {
            return AlgebraElement::zero(self.registry.clone());
        }
        AlgebraElement {
            registry: self.registry.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(i, c)| (i.clone(), c.mul(k)))
                .collect(),
        }
    }

    pub fn scale_i64(&self, k: i64) -> AlgebraElement {
        self.scale(&Scalar::from_i64(k))
    }

    /// Product in the registry's algebra structure.
    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        self.check_same(other);
        let mut out = AlgebraElement::zero(self.registry.clone());
        for (ia, ca) in &self.coeffs {
            for (ib, cb) in &other.coeffs {
                let prod = basis_mul(&self.registry, ia, ib);
                let c = ca.mul(cb);
                for (idx, k) in prod.coeffs {
                    out.add_term(idx, k.mul(&c));
                }
            }
        }
        out
    }

    /// Tensor product; the result lives in the flattened tensor registry.
    pub fn tensor(&self, other: &AlgebraElement) -> AlgebraElement {
        let registry = BasisRegistry::tensor(vec![self.registry.clone(), other.registry.clone()]);
        let mut out = AlgebraElement::zero(registry);
        for (ia, ca) in &self.coeffs {
            for (ib, cb) in &other.coeffs {
                let mut parts: Vec<BasisIndex> = ia.as_tuple().to_vec();
                parts.extend(ib.as_tuple().iter().cloned());
                let idx = BasisIndex::from_parts(&out.registry, &parts);
                out.add_term(idx, ca.mul(cb));
            }
        }
        out
    }

    /// Replaces the registry tag, keeping indices; caller guarantees the
    /// bases coincide (e.g. a registry and its opposite).
    pub(crate) fn with_registry(self, registry: BasisRegistry) -> AlgebraElement {
        AlgebraElement {
            registry,
            coeffs: self.coeffs,
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (idx, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let cs = c.to_string();
            let unit = matches!(idx, BasisIndex::Cl(s) if s.is_empty())
                || matches!(idx, BasisIndex::En(b) if b.is_unit());
            if unit && !matches!(idx, BasisIndex::Tuple(_)) {
                write!(f, "{cs}")?;
            } else if c.is_one() {
                write!(f, "{idx}")?;
            } else if cs.contains(" + ") || cs.contains(" - ") {
                write!(f, "({cs})*{idx}")?;
            } else {
                write!(f, "{cs}*{idx}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            basis: String,
            coeff: String,
        }
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (idx, c) in &self.coeffs {
            seq.serialize_element(&Term {
                basis: idx.to_string(),
                coeff: c.to_string(),
            })?;
        }
        seq.end()
    }
}

/// Product of two basis vectors, dispatched on the registry.
fn basis_mul(reg: &BasisRegistry, a: &BasisIndex, b: &BasisIndex) -> AlgebraElement {
    match reg {
        BasisRegistry::Clifford(p) => clifford::basis_product(p, a.as_cl(), b.as_cl()),
        BasisRegistry::En(n) => enhopf::basis_product(*n, a.as_en(), b.as_en()),
        BasisRegistry::Opposite(inner) => {
            basis_mul(inner, b, a).with_registry(reg.clone())
        }
        BasisRegistry::Tensor(parts) => {
            let av = a.as_tuple();
            let bv = b.as_tuple();
            debug_assert_eq!(av.len(), parts.len());
            let mut acc: Vec<(Vec<BasisIndex>, Scalar)> = vec![(Vec::new(), Scalar::one())];
            for (k, r) in parts.iter().enumerate() {
                let factor = basis_mul(r, &av[k], &bv[k]);
                let mut next = Vec::with_capacity(acc.len() * factor.coeffs.len().max(1));
                for (prefix, c) in &acc {
                    for (idx, d) in &factor.coeffs {
                        let mut v = prefix.clone();
                        v.push(idx.clone());
                        next.push((v, c.mul(d)));
                    }
                }
                acc = next;
                if acc.is_empty() {
                    break;
                }
            }
            AlgebraElement::from_terms(
                reg.clone(),
                acc.into_iter().map(|(v, c)| (BasisIndex::Tuple(v), c)),
            )
        }
    }
}

/// A linear map stored as its action on the domain basis.
#[derive(Clone, Debug)]
pub struct LinearMap {
    domain: BasisRegistry,
    codomain: BasisRegistry,
    action: BTreeMap<BasisIndex, AlgebraElement>,
}

impl LinearMap {
    /// Builds a map from a basis action; every image must live in `codomain`.
    pub fn new(
        domain: BasisRegistry,
        codomain: BasisRegistry,
        mut f: impl FnMut(&BasisIndex) -> AlgebraElement,
    ) -> Result<LinearMap, AlgebraError> {
        let mut action = BTreeMap::new();
        for idx in domain.basis() {
            let img = f(&idx);
            if img.registry != codomain {
                return Err(mismatch(&codomain, &img.registry));
            }
            action.insert(idx, img);
        }
        Ok(LinearMap {
            domain,
            codomain,
            action,
        })
    }

    pub fn identity(reg: BasisRegistry) -> LinearMap {
        LinearMap::new(reg.clone(), reg.clone(), |idx| {
            AlgebraElement::from_term(reg.clone(), idx.clone(), Scalar::one())
        })
        .expect("identity is well-typed")
    }

    pub fn zero_map(domain: BasisRegistry, codomain: BasisRegistry) -> LinearMap {
        LinearMap::new(domain, codomain.clone(), |_| {
            AlgebraElement::zero(codomain.clone())
        })
        .expect("zero map is well-typed")
    }

    pub fn domain(&self) -> &BasisRegistry {
        &self.domain
    }

    pub fn codomain(&self) -> &BasisRegistry {
        &self.codomain
    }

    pub fn image_of(&self, idx: &BasisIndex) -> &AlgebraElement {
        &self.action[idx]
    }

    /// Linear extension of the basis action.
    pub fn apply(&self, e: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if e.registry != self.domain {
            return Err(mismatch(&self.domain, &e.registry));
        }
        let mut out = AlgebraElement::zero(self.codomain.clone());
        for (idx, c) in &e.coeffs {
            let img = &self.action[idx];
            for (j, d) in &img.coeffs {
                out.add_term(j.clone(), c.mul(d));
            }
        }
        Ok(out)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap, AlgebraError> {
        if inner.codomain != self.domain {
            return Err(mismatch(&self.domain, &inner.codomain));
        }
        let mut action = BTreeMap::new();
        for (idx, img) in &inner.action {
            action.insert(idx.clone(), self.apply(img)?);
        }
        Ok(LinearMap {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            action,
        })
    }

    /// `f ⊗ g` on the flattened tensor registries.
    pub fn map_tensor(f: &LinearMap, g: &LinearMap) -> Result<LinearMap, AlgebraError> {
        let domain = BasisRegistry::tensor(vec![f.domain.clone(), g.domain.clone()]);
        let codomain = BasisRegistry::tensor(vec![f.codomain.clone(), g.codomain.clone()]);
        let split = f.domain.arity();
        let mut action = BTreeMap::new();
        for idx in domain.basis() {
            let parts = idx.as_tuple();
            let a = BasisIndex::from_parts(&f.domain, &parts[..split]);
            let b = BasisIndex::from_parts(&g.domain, &parts[split..]);
            let fa = &f.action[&a];
            let gb = &g.action[&b];
            let img = fa.tensor(gb);
            debug_assert!(img.registry == codomain);
            action.insert(idx.clone(), img);
        }
        Ok(LinearMap {
            domain,
            codomain,
            action,
        })
    }
}
