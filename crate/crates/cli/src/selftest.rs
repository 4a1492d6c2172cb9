use bredonkit::free_space::FreeSpace;
use bredonkit::gcw::ecp_skeleton;
use bredonkit::obstruction::{certify, lemma_cohsphere_check, recheck, ObstructionProblem};
use bredonkit::point::{euler_order, euler_reduced_regular_vanishes, mp_basis, Method};
use bredonkit::reps::{parse_rep, CyclicGroup, Irrep, RestrictedGrading};
use num_integer::Integer;
use serde::Serialize;

use crate::output::Document;

#[derive(Serialize)]
struct Row {
    check: &'static str,
    passed: bool,
    detail: String,
}

type Outcome = Result<String, String>;

fn point_methods() -> Outcome {
    for p in [3, 5] {
        for m in -4..=4 {
            for n in -2..=2 {
                let g = RestrictedGrading::new(m, n);
                let c = mp_basis(p, g, Method::C).map_err(|e| e.to_string())?;
                for method in [Method::A, Method::B] {
                    if mp_basis(p, g, method).map_err(|e| e.to_string())? != c {
                        return Err(format!("{method:?} differs from C at {g}, p = {p}"));
                    }
                }
            }
        }
    }
    Ok("A = B = C on 90 gradings".into())
}

fn euler_orders() -> Outcome {
    let mut count = 0;
    for n in 2..=12u64 {
        let g = CyclicGroup::new(n).unwrap();
        for k in 1..=n / 2 {
            let got = euler_order(g, Irrep::Xi(k)).map_err(|e| e.to_string())?;
            if got != Some(n / n.gcd(&k)) {
                return Err(format!("C_{n}, xi^{k}: {got:?}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} characters"))
}

fn reduced_regular() -> Outcome {
    for (n, expect) in [(6, true), (10, true), (3, false), (4, false)] {
        let r = euler_reduced_regular_vanishes(CyclicGroup::new(n).unwrap()).map_err(|e| e.to_string())?;
        if r.vanishes != expect {
            return Err(format!("C_{n}: vanishes = {}", r.vanishes));
        }
    }
    Ok("C_6, C_10 vanish; C_3, C_4 do not".into())
}

fn cohsphere() -> Outcome {
    for (p, v, w) in [(3, "xi", "xi"), (5, "xi+xi^2", "xi+xi^2"), (3, "xi", "1+xi")] {
        let g = CyclicGroup::new(p).unwrap();
        let (v, w) = (parse_rep(g, v).unwrap(), parse_rep(g, w).unwrap());
        let h = lemma_cohsphere_check(p, &v, &w).map_err(|e| e.to_string())?;
        if !h.is_zero() {
            return Err(format!("H^{w}(S({v})_+) = {h}"));
        }
    }
    Ok("3 cases vanish".into())
}

fn lens_threshold() -> Outcome {
    let fs = FreeSpace::new(&ecp_skeleton(3, 3).unwrap()).map_err(|e| e.to_string())?;
    let pw = fs.euler_powers(3).map_err(|e| e.to_string())?;
    if pw[2].is_zero() || !pw[3].is_zero() {
        return Err("a^2.1 or a^3.1 wrong on S(3xi)".into());
    }
    Ok("a^2.1 != 0 = a^3.1 on S(3xi), p = 3".into())
}

fn certificates() -> Outcome {
    for (p, d) in [(2, 3), (3, 2)] {
        let cert = certify(&ObstructionProblem::new(p, d).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        recheck(&cert).map_err(|e| e.to_string())?;
    }
    Ok("(2,3) and (3,2) certified and rechecked".into())
}

pub fn run(command: String) -> (Document, bool) {
    let checks: [(&'static str, fn() -> Outcome); 6] = [
        ("point_methods_agree", point_methods),
        ("euler_orders", euler_orders),
        ("reduced_regular_vanishing", reduced_regular),
        ("cohomology_of_spheres_vanishes", cohsphere),
        ("lens_euler_threshold", lens_threshold),
        ("certificates", certificates),
    ];
    let mut doc = Document::table(command, vec!["check", "passed", "detail"]);
    let mut ok = true;
    for (check, f) in checks {
        let (passed, detail) = match f() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        ok &= passed;
        doc.push(&Row { check, passed, detail });
    }
    let passed = doc.rows.iter().filter(|r| r["passed"] == true).count();
    doc.push(&Row { check: "summary", passed: ok, detail: format!("{passed}/{} passed", checks.len()) });
    (doc, ok)
}
