//! Small fixtures shared by unit tests.

use crate::algebra::FinAlgebra;
use crate::scalar::{int, Dvr};

/// `O[x]/(x^2 - c x)` on the basis `{1, x}`.
pub(crate) fn hyper(p: u64, c: i64) -> FinAlgebra {
    let z = int(0);
    let one = int(1);
    let constants = vec![
        vec![vec![one.clone(), z.clone()], vec![z.clone(), one.clone()]],
        vec![vec![z.clone(), one.clone()], vec![z.clone(), int(c)]],
    ];
    FinAlgebra::from_structure_constants(Dvr::new(p).unwrap(), vec!["1".into(), "x".into()], constants, vec![one, z], vec![None, None])
        .unwrap()
}

/// `O[x,y]/(x^2 - p x, y^2 - p y, xy)` on the basis `{1, x, y}`.
pub(crate) fn fiber3(p: u64) -> FinAlgebra {
    let pi = p as i64;
    let v = |a: i64, b: i64, c: i64| vec![int(a), int(b), int(c)];
    let constants = vec![
        vec![v(1, 0, 0), v(0, 1, 0), v(0, 0, 1)],
        vec![v(0, 1, 0), v(0, pi, 0), v(0, 0, 0)],
        vec![v(0, 0, 1), v(0, 0, 0), v(0, 0, pi)],
    ];
    FinAlgebra::from_structure_constants(
        Dvr::new(p).unwrap(),
        vec!["1".into(), "x".into(), "y".into()],
        constants,
        v(1, 0, 0),
        vec![None; 3],
    )
    .unwrap()
}

/// `F_p[x]/(x^2)` as a torsion algebra on `{1, x}`.
pub(crate) fn dual_numbers_fp(p: u64) -> FinAlgebra {
    let z = int(0);
    let one = int(1);
    let constants = vec![
        vec![vec![one.clone(), z.clone()], vec![z.clone(), one.clone()]],
        vec![vec![z.clone(), one.clone()], vec![z.clone(), z.clone()]],
    ];
    FinAlgebra::from_structure_constants(Dvr::new(p).unwrap(), vec!["1".into(), "x".into()], constants, vec![one, z], vec![Some(1); 2])
        .unwrap()
}

/// `F_p[x,y]/(x^2, xy, y^2)` on `{1, x, y}`.
pub(crate) fn square_zero_fp(p: u64) -> FinAlgebra {
    let v = |a: i64, b: i64, c: i64| vec![int(a), int(b), int(c)];
    let constants = vec![
        vec![v(1, 0, 0), v(0, 1, 0), v(0, 0, 1)],
        vec![v(0, 1, 0), v(0, 0, 0), v(0, 0, 0)],
        vec![v(0, 0, 1), v(0, 0, 0), v(0, 0, 0)],
    ];
    FinAlgebra::from_structure_constants(
        Dvr::new(p).unwrap(),
        vec!["1".into(), "x".into(), "y".into()],
        constants,
        v(1, 0, 0),
        vec![Some(1); 3],
    )
    .unwrap()
}

/// `O/p^k` as a rank-one torsion algebra.
pub(crate) fn truncated(p: u64, k: u64) -> FinAlgebra {
    FinAlgebra::from_structure_constants(Dvr::new(p).unwrap(), vec!["1".into()], vec![vec![vec![int(1)]]], vec![int(1)], vec![Some(k)])
        .unwrap()
}
