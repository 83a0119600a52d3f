//! Jones polynomial of an oriented link diagram.
//!
//! The Kauffman bracket `<D>` in the variable `A` is normalized by the writhe
//! `w` as `V(L) = (-A)^{-3w} <D>`, then re-expressed in `z = t^{1/2} = A^{-2}`
//! so that half-integer powers of `t` stay integral. Polynomials returned
//! here live in `z`; an exponent `e` of `z` is the power `t^{e/2}`.

use crate::bracket::{delta, BracketEngine, JonesError, Shadow};
use crate::diagram::LinkDiagram;
use crate::poly::LaurentPoly;

/// Output of a Jones evaluation, with engine telemetry.
#[derive(Debug, Clone)]
pub struct JonesResult {
    /// The Jones polynomial in `z = t^{1/2}`.
    pub poly: LaurentPoly,
    /// Writhe of the evaluated diagram.
    pub writhe: i64,
    /// Recursion nodes the engine expanded for this evaluation.
    pub nodes: u64,
    /// Memo hits during this evaluation.
    pub memo_hits: u64,
}

/// Evaluates the Jones polynomial of `d` with a dedicated default engine.
pub fn jones(d: &LinkDiagram) -> Result<LaurentPoly, JonesError> {
    let mut eng = BracketEngine::default();
    Ok(jones_with(d, &mut eng)?.poly)
}

/// Evaluates the Jones polynomial of `d`, reusing `eng`'s memo and budget.
pub fn jones_with(d: &LinkDiagram, eng: &mut BracketEngine) -> Result<JonesResult, JonesError> {
    let nodes0 = eng.nodes;
    let hits0 = eng.memo_hits;
    let b = eng.bracket_b(Shadow::from(d))?;
    let w = d.writhe();
    // (-A)^{-3w} * <D> = (-1)^w A^{-3w} * B / delta.
    let mut va = &LaurentPoly::monomial(-3 * w, if w.rem_euclid(2) == 1 { -1 } else { 1 }) * &b;
    va = va.div_exact(&delta())?;
    let poly = a_to_z(&va)?;
    check_parity(&poly, d.n_components())?;
    Ok(JonesResult {
        poly,
        writhe: w,
        nodes: eng.nodes - nodes0,
        memo_hits: eng.memo_hits - hits0,
    })
}

/// Converts a polynomial in `A` to one in `z = A^{-2}`.
fn a_to_z(p: &LaurentPoly) -> Result<LaurentPoly, JonesError> {
    let mut pairs = Vec::with_capacity(p.len());
    for (e, c) in p.iter() {
        if e % 2 != 0 {
            return Err(JonesError::OddExponent);
        }
        pairs.push((-e / 2, c.clone()));
    }
    Ok(LaurentPoly::from_pairs(pairs))
}

/// Every `z`-exponent of a Jones polynomial is congruent to `m - 1` mod 2,
/// where `m` is the number of link components.
fn check_parity(p: &LaurentPoly, m: usize) -> Result<(), JonesError> {
    let want = (m as i64 - 1).rem_euclid(2);
    if p.exponents_have_parity(want) {
        Ok(())
    } else {
        Err(JonesError::Parity)
    }
}

/// Left side of the skein relation
/// `z^{-2} V(L+) - z^2 V(L-) + (z^{-1} - z) V(L0)`;
/// zero exactly when the relation holds.
pub fn skein_residual(
    v_pos: &LaurentPoly,
    v_neg: &LaurentPoly,
    v_zero: &LaurentPoly,
) -> LaurentPoly {
    let t_inv = LaurentPoly::monomial(-2, 1);
    let t = LaurentPoly::monomial(2, 1);
    let mid = LaurentPoly::from_pairs([(-1, 1), (1, -1)]);
    &(&(&t_inv * v_pos) - &(&t * v_neg)) + &(&mid * v_zero)
}

/// Checks the skein relation at crossing `i` of `d` by evaluating all three
/// members of the triple.
pub fn verify_skein_at(
    d: &LinkDiagram,
    i: usize,
    eng: &mut BracketEngine,
) -> Result<bool, JonesError> {
    let triple = crate::diagram::SkeinTriple::at(d, i)?;
    let v_this = jones_with(&triple.original, eng)?.poly;
    let v_that = jones_with(&triple.switched, eng)?.poly;
    let v_zero = jones_with(&triple.smoothed, eng)?.poly;
    let (v_pos, v_neg) = if triple.sign > 0 {
        (&v_this, &v_that)
    } else {
        (&v_that, &v_this)
    };
    Ok(skein_residual(v_pos, v_neg, &v_zero).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Crossing;

    fn unknot() -> LinkDiagram {
        LinkDiagram::new("unknot", vec![], vec![vec![0]]).unwrap()
    }

    fn trefoil_left() -> LinkDiagram {
        LinkDiagram::new(
            "trefoil",
            vec![
                Crossing([1, 4, 2, 5]),
                Crossing([3, 6, 4, 1]),
                Crossing([5, 2, 6, 3]),
            ],
            vec![vec![1, 2, 3, 4, 5, 6]],
        )
        .unwrap()
    }

    fn figure_eight() -> LinkDiagram {
        LinkDiagram::new(
            "fig8",
            vec![
                Crossing([4, 2, 5, 1]),
                Crossing([8, 6, 1, 5]),
                Crossing([6, 3, 7, 4]),
                Crossing([2, 7, 3, 8]),
            ],
            vec![vec![1, 2, 3, 4, 5, 6, 7, 8]],
        )
        .unwrap()
    }

    fn hopf_writhe_minus_2() -> LinkDiagram {
        LinkDiagram::new(
            "hopf",
            vec![Crossing([1, 4, 2, 3]), Crossing([3, 2, 4, 1])],
            vec![vec![1, 2], vec![3, 4]],
        )
        .unwrap()
    }

    #[test]
    fn unknot_is_one() {
        assert_eq!(jones(&unknot()).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn trefoils() {
        let left = jones(&trefoil_left()).unwrap();
        assert_eq!(left.render_t(), "t^-1 + t^-3 - t^-4");
        let right = jones(&trefoil_left().mirror()).unwrap();
        assert_eq!(right.render_t(), "-t^4 + t^3 + t");
        assert_eq!(right, left.invert_variable());
    }

    #[test]
    fn figure_eight_is_amphichiral() {
        let v = jones(&figure_eight()).unwrap();
        assert_eq!(v.render_t(), "t^2 - t + 1 - t^-1 + t^-2");
        assert_eq!(jones(&figure_eight().mirror()).unwrap(), v);
    }

    #[test]
    fn hopf_links() {
        let d = hopf_writhe_minus_2();
        let v = jones(&d).unwrap();
        let plus = jones(&d.mirror()).unwrap();
        if d.writhe() == -2 {
            assert_eq!(v.render_t(), "-t^{-1/2} - t^{-5/2}");
            assert_eq!(plus.render_t(), "-t^{5/2} - t^{1/2}");
        } else {
            panic!("unexpected writhe");
        }
    }

    #[test]
    fn unlink_value() {
        let two = unknot().disjoint_union(&unknot());
        // V of the 2-component unlink is -z - z^{-1} = -t^{1/2} - t^{-1/2}.
        assert_eq!(
            jones(&two).unwrap(),
            LaurentPoly::from_pairs([(1, -1), (-1, -1)])
        );
    }

    #[test]
    fn jones_invariant_under_simplify() {
        // A kinked, R2-padded trefoil reduces to the same polynomial.
        let d = LinkDiagram::new(
            "kinked",
            vec![
                Crossing([1, 4, 2, 5]),
                Crossing([3, 6, 4, 1]),
                Crossing([5, 7, 6, 3]),
                Crossing([2, 7, 8, 8]),
            ],
            vec![vec![1, 2, 8, 7, 3, 4, 5, 6]],
        )
        .unwrap();
        assert_eq!(jones(&d).unwrap(), jones(&trefoil_left()).unwrap());
        assert_eq!(
            jones(&d.simplify()).unwrap(),
            jones(&trefoil_left()).unwrap()
        );
    }

    #[test]
    fn skein_relation_on_samples() {
        let mut eng = BracketEngine::default();
        for d in [trefoil_left(), figure_eight(), hopf_writhe_minus_2()] {
            for i in 0..d.n_crossings() {
                assert!(verify_skein_at(&d, i, &mut eng).unwrap());
            }
        }
    }
}
