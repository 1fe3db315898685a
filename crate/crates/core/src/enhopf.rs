//! The pointed Hopf algebra E(n) on generators `g, x₁, …, xₙ` with
//! `g² = 1`, `xᵢ² = 0`, `gxᵢ = -xᵢg`, `xᵢxⱼ = -xⱼxᵢ` (i < j), and basis
//! `{gʲx_P | P ⊆ {1, …, n}, j ∈ {0, 1}}`.
//!
//! Structure maps:
//! `Δ(gʲx_P) = Σ_{F⊆P} (-1)^{S(F,P)} gʲx_F ⊗ g^{|F|+j} x_{P∖F}`,
//! `ε(gʲx_P) = δ_{P=∅}`,
//! `S(gʲx_P) = (-1)^{j|P|} g^{j+|P|} x_P`,
//! and the opposite product `mᵒᵖ(h ⊗ h′) = h′h`.

use std::fmt;

use crate::linalg::{AlgebraElement, BasisIndex, BasisRegistry};
use crate::scalar::Scalar;
use crate::setcombin::{s_sign, SubsetIndex};

/// Basis monomial `gʲx_P`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EnBasis {
    p: SubsetIndex,
    j: u8,
}

impl EnBasis {
    pub fn new(j: u8, p: SubsetIndex) -> EnBasis {
        debug_assert!(j <= 1);
        debug_assert!(!p.contains(0), "E(n) exponent sets live in {{1, …, n}}");
        EnBasis { p, j }
    }

    pub fn unit() -> EnBasis {
        EnBasis::new(0, SubsetIndex::EMPTY)
    }

    pub fn j(&self) -> u8 {
        self.j
    }

    pub fn p(&self) -> SubsetIndex {
        self.p
    }

    pub fn is_unit(&self) -> bool {
        self.j == 0 && self.p.is_empty()
    }

    pub fn grouplike(&self) -> bool {
        self.p.is_empty()
    }
}

impl fmt::Display for EnBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        if self.j == 1 {
            write!(f, "g")?;
            if self.p.is_empty() {
                return Ok(());
            }
            write!(f, ".")?;
        }
        for (k, e) in self.p.elements().enumerate() {
            if k > 0 {
                write!(f, ".")?;
            }
            write!(f, "x{e}")?;
        }
        Ok(())
    }
}

pub fn registry(n: usize) -> BasisRegistry {
    BasisRegistry::En(n)
}

pub fn one(n: usize) -> AlgebraElement {
    AlgebraElement::one(registry(n))
}

pub fn g_elem(n: usize) -> AlgebraElement {
    basis_elem(n, EnBasis::new(1, SubsetIndex::EMPTY))
}

pub fn x_elem(n: usize, i: u8) -> AlgebraElement {
    debug_assert!(1 <= i && i as usize <= n);
    basis_elem(n, EnBasis::new(0, SubsetIndex::singleton(i)))
}

pub fn basis_elem(n: usize, b: EnBasis) -> AlgebraElement {
    AlgebraElement::from_term(registry(n), BasisIndex::En(b), Scalar::one())
}

/// Normal form of `gʲx_P · gᵏx_Q` as a signed basis monomial: pulling `gᵏ`
/// through `x_P` contributes `(-1)^{k|P|}`, and `x_P x_Q` vanishes on overlap
/// or reorders with the sign `(-1)^{S(P, P⊔Q)}`.
pub(crate) fn basis_mul_signed(a: EnBasis, b: EnBasis) -> Option<(EnBasis, i64)> {
    if !a.p.intersection(b.p).is_empty() {
        return None;
    }
    let union = a.p.union(b.p);
    let mut sign = s_sign(a.p, union).expect("subset by construction");
    if b.j == 1 && a.p.len() % 2 == 1 {
        sign = -sign;
    }
    Some((EnBasis::new((a.j + b.j) % 2, union), sign))
}

pub(crate) fn basis_product(n: usize, a: EnBasis, b: EnBasis) -> AlgebraElement {
    match basis_mul_signed(a, b) {
        None => AlgebraElement::zero(registry(n)),
        Some((m, sign)) => {
            AlgebraElement::from_term(registry(n), BasisIndex::En(m), Scalar::from_i64(sign))
        }
    }
}

/// Product, linear in both arguments.
pub fn mul(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    a.mul(b)
}

/// Opposite product `mᵒᵖ(h ⊗ h′) = h′h`.
pub fn op_mul(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    b.mul(a)
}

/// Comultiplication on a basis monomial, as signed basis pairs.
pub(crate) fn comul_basis(b: EnBasis) -> Vec<(EnBasis, EnBasis, i64)> {
    b.p.subsets()
        .map(|f| {
            let sign = s_sign(f, b.p).expect("subset");
            let left = EnBasis::new(b.j, f);
            let right = EnBasis::new(((f.len() as u8) + b.j) % 2, b.p.difference(f));
            (left, right, sign)
        })
        .collect()
}

/// `Δ`, valued in `E(n) ⊗ E(n)`.
pub fn comul(e: &AlgebraElement) -> AlgebraElement {
    let n = en_arity(e);
    let reg2 = BasisRegistry::tensor(vec![registry(n), registry(n)]);
    let mut out = AlgebraElement::zero(reg2);
    for (idx, c) in e.iter() {
        for (l, r, sign) in comul_basis(idx.as_en()) {
            out.add_term(
                BasisIndex::Tuple(vec![BasisIndex::En(l), BasisIndex::En(r)]),
                c.scale_i64(sign),
            );
        }
    }
    out
}

/// `(Δ ⊗ Id)Δ`, valued in `E(n)^{⊗3}`; coassociativity makes the leg choice
/// immaterial.
pub fn comul2(e: &AlgebraElement) -> AlgebraElement {
    let n = en_arity(e);
    let reg3 = BasisRegistry::tensor(vec![registry(n), registry(n), registry(n)]);
    let mut out = AlgebraElement::zero(reg3);
    for (idx, c) in e.iter() {
        for (l, r, s1) in comul_basis(idx.as_en()) {
            for (ll, lr, s2) in comul_basis(l) {
                out.add_term(
                    BasisIndex::Tuple(vec![
                        BasisIndex::En(ll),
                        BasisIndex::En(lr),
                        BasisIndex::En(r),
                    ]),
                    c.scale_i64(s1 * s2),
                );
            }
        }
    }
    out
}

/// `ε(gʲx_P) = δ_{P=∅}`, extended linearly.
pub fn counit(e: &AlgebraElement) -> Scalar {
    let mut acc = Scalar::zero();
    for (idx, c) in e.iter() {
        if idx.as_en().p.is_empty() {
            acc = acc.add(c);
        }
    }
    acc
}

pub(crate) fn antipode_basis(b: EnBasis) -> (EnBasis, i64) {
    let np = b.p.len() as u8;
    let sign = if (b.j * np) % 2 == 1 { -1 } else { 1 };
    (EnBasis::new((b.j + np) % 2, b.p), sign)
}

/// Antipode `S(gʲx_P) = (-1)^{j|P|} g^{j+|P|} x_P`, extended linearly.
pub fn antipode(e: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero(e.registry().clone());
    for (idx, c) in e.iter() {
        let (b, sign) = antipode_basis(idx.as_en());
        out.add_term(BasisIndex::En(b), c.scale_i64(sign));
    }
    out
}

fn en_arity(e: &AlgebraElement) -> usize {
    match e.registry() {
        BasisRegistry::En(n) => *n,
        other => panic!("expected an E(n) element, got {other}"),
    }
}

/// `x_P` as an explicit product of the generators listed by `p`.
pub fn x_word(n: usize, p: SubsetIndex) -> AlgebraElement {
    p.elements().fold(one(n), |acc, i| acc.mul(&x_elem(n, i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setcombin::{enumerate_matchings, matching_sign};

    /// Reduction oracle: multiply two words generator by generator using only
    /// the defining relations, one adjacent rewrite at a time.
    fn word_mul_oracle(n: usize, a: EnBasis, b: EnBasis) -> AlgebraElement {
        // Word: (j copies of g) then the x's. Reduce the concatenation.
        #[derive(Clone)]
        struct Word(Vec<i8>, i64); // -1 encodes g, i ≥ 1 encodes x_i
        let mut items: Vec<i8> = Vec::new();
        for _ in 0..a.j {
            items.push(-1);
        }
        items.extend(a.p().elements().map(|e| e as i8));
        for _ in 0..b.j {
            items.push(-1);
        }
        items.extend(b.p().elements().map(|e| e as i8));
        let mut stack = vec![Word(items, 1)];
        let mut out = AlgebraElement::zero(registry(n));
        'words: while let Some(Word(mut w, mut sign)) = stack.pop() {
            // one pass of adjacent rewrites, restart after each change
            let mut i = 0;
            while i + 1 < w.len() {
                let (u, v) = (w[i], w[i + 1]);
                if u == -1 && v == -1 {
                    w.drain(i..=i + 1); // g² = 1
                    i = 0;
                    continue;
                }
                if u >= 1 && v == -1 {
                    w.swap(i, i + 1); // x_i g = -g x_i
                    sign = -sign;
                    i = 0;
                    continue;
                }
                if u >= 1 && v >= 1 && u == v {
                    continue 'words; // x_i² = 0
                }
                if u >= 1 && v >= 1 && u > v {
                    w.swap(i, i + 1); // x_u x_v = -x_v x_u
                    sign = -sign;
                    i = 0;
                    continue;
                }
                i += 1;
            }
            let j = w.iter().filter(|&&c| c == -1).count() as u8;
            let mut p = SubsetIndex::EMPTY;
            for &c in &w {
                if c >= 1 {
                    p = p.insert(c as u8);
                }
            }
            out.add_term(
                BasisIndex::En(EnBasis::new(j, p)),
                Scalar::from_i64(sign),
            );
        }
        out
    }

    #[test]
    fn defining_relations() {
        let n = 2;
        assert_eq!(g_elem(n).mul(&g_elem(n)), one(n));
        assert!(x_elem(n, 1).mul(&x_elem(n, 1)).is_zero());
        // (gx₁)(gx₂) = -x₁x₂
        let gx1 = g_elem(n).mul(&x_elem(n, 1));
        let gx2 = g_elem(n).mul(&x_elem(n, 2));
        let expected = x_elem(n, 1).mul(&x_elem(n, 2)).neg();
        assert_eq!(gx1.mul(&gx2), expected);
    }

    #[test]
    fn products_match_word_rewriting_oracle() {
        let n = 3;
        for a in registry(n).basis() {
            for b in registry(n).basis() {
                let fast = basis_product(n, a.as_en(), b.as_en());
                let slow = word_mul_oracle(n, a.as_en(), b.as_en());
                assert_eq!(fast, slow, "{a} · {b}");
            }
        }
    }

    #[test]
    fn comul_examples() {
        let n = 2;
        // Δ(g) = g ⊗ g
        assert_eq!(comul(&g_elem(n)), g_elem(n).tensor(&g_elem(n)));
        // Δ(x₁) = x₁ ⊗ g + 1 ⊗ x₁
        let x1 = x_elem(n, 1);
        assert_eq!(
            comul(&x1),
            x1.tensor(&g_elem(n)).add(&one(n).tensor(&x1))
        );
        // Δ(x₁x₂) = 1⊗x₁x₂ + x₁⊗gx₂ − x₂⊗gx₁ + x₁x₂⊗1
        let x2 = x_elem(n, 2);
        let x12 = x1.mul(&x2);
        let g = g_elem(n);
        let expected = one(n)
            .tensor(&x12)
            .add(&x1.tensor(&g.mul(&x2)))
            .sub(&x2.tensor(&g.mul(&x1)))
            .add(&x12.tensor(&one(n)));
        assert_eq!(comul(&x12), expected);
    }

    #[test]
    fn antipode_and_counit_examples() {
        let n = 2;
        assert_eq!(antipode(&g_elem(n)), g_elem(n));
        // S(gx₁) = -x₁
        let gx1 = g_elem(n).mul(&x_elem(n, 1));
        assert_eq!(antipode(&gx1), x_elem(n, 1).neg());
        assert!(counit(&x_elem(n, 1).mul(&x_elem(n, 2))).is_zero());
        assert!(counit(&g_elem(n)).is_one());
    }

    #[test]
    fn op_mul_swaps() {
        let n = 2;
        let a = g_elem(n).mul(&x_elem(n, 1));
        let b = x_elem(n, 2);
        assert_eq!(op_mul(&a, &b), b.mul(&a));
    }

    #[test]
    fn reorder_identity() {
        // (-1)^{S(F,P)} x_F x_{P∖F} = x_P over subsets of {1..4}
        let n = 4;
        for p in SubsetIndex::range(1, n as u8).subsets() {
            let xp = x_word(n, p);
            for f in p.subsets() {
                let lhs = x_word(n, f)
                    .mul(&x_word(n, p.difference(f)))
                    .scale_i64(s_sign(f, p).unwrap());
                assert_eq!(lhs, xp, "F={f} P={p}");
            }
        }
    }

    #[test]
    fn matching_factorization() {
        // x_S = sgn(𝒫) x_{P₁}⋯x_{P_m} for every matching of every even S ⊆ {1..6}
        let n = 6;
        for mask in 0u32..1 << 6 {
            let s = SubsetIndex::from_mask(mask << 1);
            if s.len() % 2 != 0 {
                continue;
            }
            let xs = x_word(n, s);
            for m in enumerate_matchings(s).unwrap() {
                let mut prod = one(n);
                for &(a, b) in m.blocks() {
                    prod = prod.mul(&x_word(n, SubsetIndex::EMPTY.insert(a).insert(b)));
                }
                assert_eq!(prod.scale_i64(matching_sign(&m)), xs, "S={s} 𝒫={m}");
            }
        }
    }

    #[test]
    fn counit_lands_on_grouplikes_only() {
        let paired = comul(&x_elem(2, 1));
        // (ε⊗Id)Δ(x₁) picks out x₁ itself
        let mut recovered = AlgebraElement::zero(registry(2));
        for (idx, c) in paired.iter() {
            let parts = idx.as_tuple();
            if parts[0].as_en().p().is_empty() {
                recovered.add_term(parts[1].clone(), c.clone());
            }
        }
        assert_eq!(recovered, x_elem(2, 1));
    }
}
