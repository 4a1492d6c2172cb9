use bredonkit::gcw::{disjoint_basepoint, join, lens_sphere, rep_sphere_model, smash, sphere_model, suspension, truncate, GcwComplex};
use bredonkit::linalg::{invariant_factors, snf, Coefficients, FpMatrix, GroupPresentation, IntMatrix};
use bredonkit::reps::{CyclicGroup, Irrep, VirtualRep};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn det(m: &[Vec<i128>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k×k minors.
fn determinantal_divisor(m: &[Vec<i64>], k: usize) -> i128 {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    let mut g = 0i128;
    for rows in subsets(r, k) {
        for cols in subsets(c, k) {
            let sub: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j] as i128).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #[test]
    fn snf_matches_determinantal_divisors(rows in matrix()) {
        let m = IntMatrix::from_rows(&rows);
        let d = snf(&m);
        prop_assert_eq!(d.left.mul(&m).mul(&d.right), d.diagonal());
        prop_assert_eq!(d.left.mul(&d.left_inverse), IntMatrix::identity(m.rows()));
        prop_assert_eq!(d.right.mul(&d.right_inverse), IntMatrix::identity(m.cols()));
        let mut prod = BigInt::one();
        for k in 1..=m.rows().min(m.cols()) {
            let dk = determinantal_divisor(&rows, k);
            if k <= d.rank() {
                prod *= &d.invariant_factors[k - 1];
                prop_assert_eq!(prod.clone(), BigInt::from(dk));
            } else {
                prop_assert_eq!(dk, 0);
            }
        }
        prop_assert_eq!(invariant_factors(&m), d.invariant_factors);
    }

    #[test]
    fn fp_rank_nullity(rows in matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let m = FpMatrix::from_int(&IntMatrix::from_rows(&rows), p);
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.len(), m.cols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn canonicalize_is_additive(a in prop::collection::vec(-3i64..=3, 3), b in prop::collection::vec(-3i64..=3, 3), p in prop::sample::select(vec![3u64, 5, 7])) {
        let g = CyclicGroup::new(p).unwrap();
        let rep = |v: &[i64]| {
            VirtualRep::trivial(g, v[0])
                + VirtualRep::irreducible(g, Irrep::Xi(1), v[1]).unwrap()
                + VirtualRep::irreducible(g, Irrep::Xi(p / 2), v[2]).unwrap()
        };
        let (x, y) = (rep(&a), rep(&b));
        let sum = (x.clone() + y.clone()).canonicalize(p).unwrap();
        prop_assert_eq!(sum, x.canonicalize(p).unwrap() + y.canonicalize(p).unwrap());
    }

    #[test]
    fn unit_spheres_are_spheres(n in 2u64..=6, ks in prop::collection::vec(1u64..=3, 1..=3)) {
        let g = CyclicGroup::new(n).unwrap();
        let mut v = VirtualRep::zero(g);
        for k in ks {
            v = v + VirtualRep::irreducible(g, Irrep::Xi(1 + (k - 1) % (n / 2)), 1).unwrap();
        }
        let u = sphere_model(&v).unwrap().underlying();
        let top = v.dim() as usize - 1;
        for k in 0..=top + 1 {
            let h = u.homology(k, Coefficients::Integers).unwrap();
            let expect = usize::from(k == 0) + usize::from(k == top);
            prop_assert_eq!(h, GroupPresentation::integral(expect, vec![]), "H_{} of S({})", k, v);
        }
    }
}

fn square_zero(x: &GcwComplex) -> bool {
    let checks = [x.underlying(), x.quotient()];
    checks.iter().all(|c| {
        let top = c.dim().unwrap_or(0);
        (1..top).all(|k| c.boundary(k).mul(&c.boundary(k + 1)).is_zero())
    })
}

fn random_complex(rng: &mut StdRng) -> GcwComplex {
    let n = rng.gen_range(2..=6u64);
    let g = CyclicGroup::new(n).unwrap();
    let irrep = |rng: &mut StdRng| Irrep::Xi(rng.gen_range(1..=n / 2));
    let mut cur = lens_sphere(g, irrep(rng), rng.gen_range(1..=2)).unwrap();
    for _ in 0..rng.gen_range(1..=4) {
        if cur.len() > 60 {
            break;
        }
        cur = match rng.gen_range(0..5) {
            0 => suspension(&cur),
            1 => join(&cur, &lens_sphere(g, irrep(rng), 1).unwrap()).unwrap(),
            2 => {
                let based = if cur.basepoint().is_some() { cur } else { disjoint_basepoint(&cur) };
                let v = VirtualRep::irreducible(g, irrep(rng), 1).unwrap();
                smash(&based, &rep_sphere_model(&v).unwrap()).unwrap()
            }
            3 => truncate(&cur, cur.dim().unwrap_or(0).saturating_sub(1)),
            _ => {
                if cur.basepoint().is_some() {
                    cur
                } else {
                    disjoint_basepoint(&cur)
                }
            }
        };
    }
    cur
}

#[test]
fn random_constructions_square_to_zero() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for i in 0..500 {
        let x = random_complex(&mut rng);
        assert!(x.check().is_ok(), "complex {i} fails validation");
        assert!(square_zero(&x), "complex {i}: boundary does not square to zero");
    }
}

#[test]
fn zero_matrix_has_no_invariant_factors() {
    assert!(invariant_factors(&IntMatrix::zeros(3, 2)).is_empty());
    assert!(BigInt::zero().is_zero());
}
