//! A small library of characters: elements of the joint kernel of the screenings `S_i`.
//!
//! Each entry is checked with `is_character` in the test suite.

use gaudin_core::{int, rat, Family, Rat};

use crate::cartan::CartanType;
use crate::lambda::{CharacterRing, LambdaElement};
use crate::Result;

#[derive(Clone, Debug)]
pub struct CuratedCharacter {
    pub name: &'static str,
    pub element: LambdaElement,
}

fn binom2(n: usize) -> i64 {
    (n * n.saturating_sub(1) / 2) as i64
}

/// `Σ_{j<k} λ_j(a) λ_k(a−1)`, type A.
pub fn exterior_square(ring: &CharacterRing, a: &Rat) -> Result<LambdaElement> {
    let n = ring.cartan().big_n();
    let mut out = LambdaElement::zero();
    for j in 0..n {
        for k in j + 1..n {
            out = &out + &(&ring.lambda(j, a.clone())? * &ring.lambda(k, a - int(1))?);
        }
    }
    Ok(out)
}

/// `Σ_{j≤k} λ_j(a) λ_k(a+1)`, type A.
pub fn symmetric_square(ring: &CharacterRing, a: &Rat) -> Result<LambdaElement> {
    let n = ring.cartan().big_n();
    let mut out = LambdaElement::zero();
    for j in 0..n {
        for k in j..n {
            out = &out + &(&ring.lambda(j, a.clone())? * &ring.lambda(k, a + int(1))?);
        }
    }
    Ok(out)
}

/// Built-in characters by name; `lambda_sum` is `Σ_j λ_j(0)`.
pub fn builtin(ty: CartanType, name: &str) -> Result<Option<LambdaElement>> {
    Ok(curated(ty)?.into_iter().find(|c| c.name == name).map(|c| c.element))
}

pub fn curated(ty: CartanType) -> Result<Vec<CuratedCharacter>> {
    let ring = CharacterRing::new(ty)?;
    let big_n = int(ty.big_n() as i64);
    let chi = |a: Rat| ring.lambda_sum(&a);
    let konst = |c: Rat| LambdaElement::constant(c);
    let reduced = |a: Rat| &chi(a) - &konst(big_n.clone());
    let mut out = vec![
        CuratedCharacter { name: "one", element: LambdaElement::one() },
        CuratedCharacter { name: "lambda_sum", element: chi(int(0)) },
        CuratedCharacter { name: "reduced_lambda_sum", element: reduced(int(0)) },
        CuratedCharacter { name: "shift_difference", element: &chi(int(0)) - &chi(rat(1, 3)) },
        CuratedCharacter { name: "reduced_product", element: &reduced(int(0)) * &reduced(int(2)) },
    ];
    if ty.family == Family::A && ty.n >= 2 {
        let n = ty.n;
        let ext = exterior_square(&ring, &int(0))?;
        // constant and weight-one parts cancel, leaving a quadratic W element
        let quad = &(&ext - &chi(int(0)).scale(&int(n as i64 - 1))) + &konst(int(binom2(n)));
        out.push(CuratedCharacter { name: "exterior_square", element: ext });
        out.push(CuratedCharacter { name: "symmetric_square", element: symmetric_square(&ring, &rat(1, 2))? });
        out.push(CuratedCharacter { name: "reduced_exterior_square", element: quad });
    }
    Ok(out)
}
