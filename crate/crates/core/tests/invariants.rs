use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use wdefect_core::algebra::FinModule;
use wdefect_core::congruence::certify_c0;
use wdefect_core::engine::{analyze, oracle_recompute, AnalyzeOptions};
use wdefect_core::family::{branch_points, point_module, star, tensor, torsion_quotient};
use wdefect_core::oracle::{oracle_invariants, Invariants};
use wdefect_core::problem::Problem;
use wdefect_core::smith::{smith_normal_form, OMatrix};
use wdefect_core::{Dvr, Error};

fn hypersurface(p: u64, body: &str) -> Problem {
    Problem::parse(&format!(
        "[dvr]\nprime = {p}\n\n[ring]\nkind = \"poly\"\nvariables = [\"x\"]\nrelations = [\"{body}\"]\n\n[point]\nvalues = [0]\n"
    ))
    .unwrap()
}

// x g(x) with g(0) of valuation k: both lengths are k
#[test]
fn hypersurfaces_against_oracle() {
    let opts = AnalyzeOptions::default();
    let mut n = 0;
    for p in [2u64, 3] {
        for k in 1..=3u32 {
            let pk = p.pow(k);
            for body in [
                format!("x^2 + {pk}*x"),
                format!("x^3 + {pk}*x"),
                format!("x^3 + {p}*x^2 + {pk}*x"),
                format!("x^3 - {p}*x^2 + {pk}*x"),
            ] {
                let problem = hypersurface(p, &body);
                let r = analyze(&problem, &opts).unwrap();
                let inv = r.invariants();
                assert_eq!((inv.length_psi, inv.length_cotangent_tors, inv.delta), (k as u64, k as u64, 0), "{body}");
                assert_eq!(oracle_recompute(&problem, &opts).unwrap(), inv, "{body}");
                assert!(!r.has_inconsistency());
                n += 1;
            }
        }
    }
    assert_eq!(n, 24);
}

#[test]
fn fiber_products_against_oracle() {
    for p in [2u64, 3, 5] {
        let o = Dvr::new(p).unwrap();
        for ms in [vec![1, 1], vec![2, 1], vec![1, 2, 3], vec![3]] {
            let (a, pt) = star(&o, &ms).unwrap();
            let others = branch_points(&a, &ms).unwrap();
            let m = FinModule::free(&a, 2).direct_sum(&point_module(&a, &pt)).direct_sum(&point_module(&a, &others[0]));
            let c = certify_c0(&a, &m, &pt).unwrap();
            assert_eq!(oracle_invariants(&a, &m, pt.values()).unwrap(), Invariants::from(&c));
            assert_eq!(c.mu, 3);
            assert!(c.delta > 0);
        }
    }
}

#[test]
fn tensor_products_stay_complete_intersections() {
    let o = Dvr::new(2).unwrap();
    let (a, pa) = star(&o, &[2]).unwrap();
    let (b, pb) = star(&o, &[1]).unwrap();
    let (t, pt) = tensor(&a, &pa, &b, &pb).unwrap();
    let (t2, pt2) = tensor(&t, &pt, &b, &pb).unwrap();
    let c = certify_c0(&t2, &FinModule::regular(&t2), &pt2).unwrap();
    assert_eq!((c.length_cotangent_tors, c.delta), (4, 0));
    assert!(c.ci_flag && c.split_flag);
}

#[test]
fn hypotheses_are_enforced() {
    let o = Dvr::new(3).unwrap();
    let (a, pt) = star(&o, &[1]).unwrap();
    let torsion = FinModule::free(&a, 1).direct_sum(&torsion_quotient(&a, 1));
    assert!(matches!(certify_c0(&a, &torsion, &pt), Err(Error::ZeroDepth)));
    let others = branch_points(&a, &[1]).unwrap();
    assert!(matches!(certify_c0(&a, &point_module(&a, &others[0]), &pt), Err(Error::NotSupported)));
    let singular = hypersurface(3, "x^2");
    assert!(matches!(analyze(&singular, &AnalyzeOptions::default()), Err(Error::NotRegularPoint)));
}

fn o_matrix(p: u64) -> impl Strategy<Value = OMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(move |(r, c)| {
        proptest::collection::vec((0u32..=5, -20i64..=20, 1i64..=9), r * c).prop_map(move |cells| {
            let mut m = OMatrix::zeros(r, c);
            for (k, (v, n, d)) in cells.into_iter().enumerate() {
                let d = if d % p as i64 == 0 { d + 1 } else { d };
                m[(k / c, k % c)] = BigRational::new(BigInt::from(n) * BigInt::from(p).pow(v), BigInt::from(d));
            }
            m
        })
    })
}

proptest! {
    #[test]
    fn smith_round_trip(a in o_matrix(3)) {
        let o = Dvr::new(3).unwrap();
        let f = smith_normal_form(&o, &a);
        prop_assert_eq!(f.u.mul_mat(&a).mul_mat(&f.v), f.s.clone());
        prop_assert!(f.divisors.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(f.u.mul_mat(&f.u_inv) == OMatrix::identity(a.rows()));
    }
}
