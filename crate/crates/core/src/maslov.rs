//! Fat-diagonal intersection number and Maslov index of a domain.
//!
//! Every formula takes the polygon's corner data explicitly and refuses
//! 2-chains that do not join it.

use thiserror::Error;

use crate::chains::{boundary_on_family, first_failing_side, stray_family, CurveOneChain, Domain, Polygon};
use crate::measures::{euler_measure, pair_one_chains, point_measure};
use crate::quarter::{Quarter, Twelfths};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MaslovError {
    #[error("corner condition fails on family {}", .0 + 1)]
    CornerCondition(usize),
    #[error("boundary on family {} outside the polygon", .0 + 1)]
    StrayBoundary(usize),
    #[error("this form needs a {expected}-gon, got {got} sides")]
    Arity { expected: usize, got: usize },
}

/// Which closed form evaluates the Maslov index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    Default,
    Symmetric,
    Lipshitz,
}

fn check(d: &Domain<'_>, polygon: &Polygon) -> Result<Vec<CurveOneChain>, MaslovError> {
    if let Some(c) = first_failing_side(d, polygon) {
        return Err(MaslovError::CornerCondition(polygon.families()[c]));
    }
    if let Some(f) = stray_family(d, polygon) {
        return Err(MaslovError::StrayBoundary(f));
    }
    Ok(polygon.families().iter().map(|&f| boundary_on_family(d, f)).collect())
}

/// `Σ_{j>l≥lo} ∂_j · ∂_l` over polygon sides.
fn ordered_pairings(d: &Domain<'_>, sides: &[CurveOneChain], lo: usize) -> Quarter {
    let diagram = d.diagram();
    let mut total = Quarter::ZERO;
    for j in lo..sides.len() {
        for l in lo..j {
            total += pair_one_chains(diagram, &sides[j], &sides[l]);
        }
    }
    total
}

/// `ι(D) = μ_{last}(D) + μ_{first}(D) + Σ_{j>l>1} ∂_j(D)·∂_l(D) − e(D)`.
pub fn iota(d: &Domain<'_>, polygon: &Polygon) -> Result<Quarter, MaslovError> {
    let sides = check(d, polygon)?;
    let gens = polygon.gens();
    Ok(point_measure(d, &gens[gens.len() - 1]) + point_measure(d, &gens[0])
        + ordered_pairings(d, &sides, 1)
        - euler_measure(d))
}

/// `μ(D) = ι(D) + 2e(D) − k(n − 2)/2` for an `n`-gon.
pub fn mu(d: &Domain<'_>, polygon: &Polygon) -> Result<Quarter, MaslovError> {
    let i = iota(d, polygon)?;
    Ok(i + euler_measure(d) * 2 - polygon_constant(d, polygon))
}

/// `k(n − 2)/2`.
fn polygon_constant(d: &Domain<'_>, polygon: &Polygon) -> Quarter {
    let k = d.diagram().curves_per_family() as i64;
    let n = polygon.len() as i64;
    Quarter::from_quarters(2 * k * (n - 2))
}

/// Both values at once.
pub fn mu_iota(d: &Domain<'_>, polygon: &Polygon) -> Result<(Quarter, Quarter), MaslovError> {
    let i = iota(d, polygon)?;
    Ok((i + euler_measure(d) * 2 - polygon_constant(d, polygon), i))
}

/// `2μ_{last}(D) + Σ_{j>l≥1} ∂_j(D)·∂_l(D) − e(D)`, equal to [`iota`].
pub fn iota_singlepoint_form(d: &Domain<'_>, polygon: &Polygon) -> Result<Quarter, MaslovError> {
    let sides = check(d, polygon)?;
    let gens = polygon.gens();
    Ok(point_measure(d, &gens[gens.len() - 1]) * 2 + ordered_pairings(d, &sides, 0) - euler_measure(d))
}

/// Triangle form `e(D) + (2/3) Σ μ_{p_i}(D) + (1/3) Σ ∂_{i+1}(D)·∂_i(D) − k/2`.
pub fn mu_symmetric_n3(d: &Domain<'_>, polygon: &Polygon) -> Result<Quarter, MaslovError> {
    if polygon.len() != 3 {
        return Err(MaslovError::Arity { expected: 3, got: polygon.len() });
    }
    let sides = check(d, polygon)?;
    let diagram = d.diagram();
    let points: Quarter = polygon.gens().iter().map(|g| point_measure(d, g)).sum();
    let cyclic: Quarter = (0..3)
        .map(|i| pair_one_chains(diagram, &sides[(i + 1) % 3], &sides[i]))
        .sum();
    let k = diagram.curves_per_family() as i64;
    let total = Twelfths::from_quarter(euler_measure(d))
        + Twelfths::scaled(points, 2, 3)
        + Twelfths::scaled(cyclic, 1, 3)
        - Twelfths::from_quarter(Quarter::from_quarters(2 * k));
    Ok(total.to_quarter().expect("symmetric form lands on quarter-integers"))
}

/// Bigon form `e(D) + μ_x(D) + μ_y(D)`.
pub fn mu_lipshitz_n2(d: &Domain<'_>, polygon: &Polygon) -> Result<Quarter, MaslovError> {
    if polygon.len() != 2 {
        return Err(MaslovError::Arity { expected: 2, got: polygon.len() });
    }
    check(d, polygon)?;
    let gens = polygon.gens();
    Ok(euler_measure(d) + point_measure(d, &gens[0]) + point_measure(d, &gens[1]))
}

/// Evaluates `μ` with the chosen form.
pub fn mu_with_form(d: &Domain<'_>, polygon: &Polygon, form: Form) -> Result<Quarter, MaslovError> {
    match form {
        Form::Default => mu(d, polygon),
        Form::Symmetric => mu_symmetric_n3(d, polygon),
        Form::Lipshitz => mu_lipshitz_n2(d, polygon),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{load, s3_genus1, torus_triple};

    fn q(n: i64) -> Quarter {
        Quarter::from_quarters(n)
    }

    #[test]
    fn triangles_vanish() {
        let d = load(torus_triple());
        let p = Polygon::from_names(&d, &[vec!["x"], vec!["y"], vec!["z"]]).unwrap();
        for name in ["T1", "T2"] {
            let t = Domain::from_named(&d, &[(name, 1)]).unwrap();
            assert_eq!(mu_iota(&t, &p).unwrap(), (Quarter::ZERO, Quarter::ZERO));
            assert_eq!(iota_singlepoint_form(&t, &p).unwrap(), Quarter::ZERO);
            assert_eq!(mu_symmetric_n3(&t, &p).unwrap(), Quarter::ZERO);
        }
    }

    #[test]
    fn surface_on_one_region_fixture() {
        let d = load(s3_genus1());
        let p = Polygon::from_names(&d, &[vec!["x"], vec!["x"]]).unwrap();
        for m in -2..=2 {
            let s = Domain::surface(&d).scaled(m);
            assert_eq!(mu(&s, &p).unwrap(), Quarter::from_int(2 * m));
            assert_eq!(mu_lipshitz_n2(&s, &p).unwrap(), Quarter::from_int(2 * m));
            assert_eq!(iota(&s, &p).unwrap(), Quarter::from_int(2 * m));
        }
        assert_eq!(mu(&Domain::zero(&d), &p).unwrap(), q(0));
    }

    #[test]
    fn refuses_non_domains() {
        let d = load(torus_triple());
        let p = Polygon::from_names(&d, &[vec!["x"], vec!["y"], vec!["z"]]).unwrap();
        let h = Domain::from_named(&d, &[("H", 1)]).unwrap();
        assert!(matches!(iota(&h, &p), Err(MaslovError::CornerCondition(_))));
        assert_eq!(
            mu_lipshitz_n2(&h, &p),
            Err(MaslovError::Arity { expected: 2, got: 3 })
        );
    }
}
