//! Single-constant fixture mutations.

use lie2kit::crossmod::{check_crossed_module, mapping_cone, CrossedModule, AXIOMS};
use lie2kit::fixtures::{skeletal_sl2, strict_aff1};
use lie2kit::lie2core::{check_hom, check_lie3_strict, Lie2Hom, Lie3Algebra, HOM_CONDITIONS};
use lie2kit::ratlin::{q, unit_vec};

pub fn cm(file: &str, name: &str) -> CrossedModule {
    super::load(file).crossed_module(name).expect("fixture crossed module")
}

/// One mutation per crossed-module axiom, in the order of `AXIOMS`.
pub fn axiom_mutations() -> Vec<(&'static str, CrossedModule)> {
    let mut out = Vec::new();

    let mut c = cm("ideal_crossed_module.json", "strict_aff1_ideal_cm");
    c.phi.m1.add_at(0, 0, &q(1));
    out.push((AXIOMS[0], c));

    let mut c = cm("ideal_crossed_module.json", "strict_aff1_ideal_cm");
    c.action.module.act00[1].add_at(0, 0, &q(1));
    out.push((AXIOMS[1], c));

    let mut c = cm("ideal_crossed_module.json", "strict_aff1_ideal_cm");
    c.action.module.act01[1].add_at(0, 0, &q(1));
    out.push((AXIOMS[2], c));

    let mut c = cm("derivation_crossed_module.json", "skeletal_aff1_der");
    c.phi.m1.add_at(0, 0, &q(1));
    out.push((AXIOMS[3], c));

    let mut c = cm("derivation_crossed_module.json", "skeletal_sl2_der");
    let k1 = c.m.n1();
    c.m.l3.add_basis(&[0, 1, 2], &[], &unit_vec(k1, 0));
    out.push((AXIOMS[4], c));

    let mut c = cm("derivation_crossed_module.json", "skeletal_aff1_der");
    let k1 = c.m.n1();
    c.action.lphi0[3].add_basis(&[0, 1], &[], &unit_vec(k1, 0));
    out.push((AXIOMS[5], c));

    let mut c = cm("derivation_crossed_module.json", "skeletal_aff1_der");
    let n1 = c.g.n1();
    c.phi2.add_basis(&[0, 1], &[], &unit_vec(n1, 0));
    out.push((AXIOMS[6], c));

    out
}

/// One mutated identity morphism per homomorphism condition.
pub fn hom_mutations() -> Vec<(&'static str, Lie2Hom)> {
    let mut f1 = Lie2Hom::identity(&strict_aff1());
    f1.maps.m1.add_at(0, 0, &q(1));
    let mut f2 = Lie2Hom::identity(&skeletal_sl2());
    f2.maps.m0.add_at(0, 1, &q(1));
    // the target's mixed bracket changes; only condition 3 reads it
    let mut f3 = Lie2Hom::identity(&skeletal_sl2());
    f3.target.l2_01.add_basis(&[0], &[0], &[q(1)]);
    let mut f4 = Lie2Hom::identity(&skeletal_sl2());
    f4.maps.m1.add_at(0, 0, &q(1));
    vec![(HOM_CONDITIONS[0], f1), (HOM_CONDITIONS[1], f2), (HOM_CONDITIONS[2], f3), (HOM_CONDITIONS[3], f4)]
}

/// `Ok(())` when `expected` is the only failing axiom and carries a witness.
pub fn only_axiom(c: &CrossedModule, expected: &str) -> Result<(), String> {
    let v = check_crossed_module(c).map_err(|e| format!("error before the axioms: {e}"))?;
    let failed: Vec<&str> = v.failures().into_iter().filter(|n| AXIOMS.contains(n)).collect();
    if failed != [expected] {
        return Err(format!("failing axioms {failed:?}"));
    }
    match v.check(expected).and_then(|c| c.witness.as_ref()) {
        Some(_) => Ok(()),
        None => Err("no witness".into()),
    }
}

/// `Ok(())` when `expected` is the only failing condition and carries a witness.
pub fn only_condition(f: &Lie2Hom, expected: &str) -> Result<(), String> {
    let v = check_hom(f);
    if v.failures() != [expected] {
        return Err(format!("failing conditions {:?}", v.failures()));
    }
    match v.check(expected).and_then(|c| c.witness.as_ref()) {
        Some(_) => Ok(()),
        None => Err("no witness".into()),
    }
}

/// Perturbs one structure constant of the crossed module `m`.
pub fn mutate_m(c: &CrossedModule) -> Option<CrossedModule> {
    let mut c = c.clone();
    let (k0, k1) = c.m.dims();
    if k0 >= 2 {
        c.m.l2_00.add_basis(&[0, 1], &[], &unit_vec(k0, 0));
    } else if k0 >= 1 && k1 >= 1 {
        c.m.l2_01.add_basis(&[0], &[0], &unit_vec(k1, 0));
    } else {
        return None;
    }
    Some(c)
}

/// Perturbs one coefficient of the action `g₀ × m₀ → m₀`.
pub fn mutate_action(c: &CrossedModule) -> Option<CrossedModule> {
    let mut c = c.clone();
    if c.m.n0() == 0 {
        return None;
    }
    let x = c.g.n0() - 1;
    c.action.module.act00[x].add_at(0, 0, &q(1));
    Some(c)
}

/// Perturbs one coefficient of the action `g₀ × m₁ → m₁`.
pub fn mutate_action_m1(c: &CrossedModule) -> Option<CrossedModule> {
    let mut c = c.clone();
    if c.m.n1() == 0 {
        return None;
    }
    let x = c.g.n0() - 1;
    c.action.module.act01[x].add_at(0, 0, &q(1));
    Some(c)
}

pub fn fixture_mutations(c: &CrossedModule) -> Vec<CrossedModule> {
    [mutate_m(c), mutate_action(c), mutate_action_m1(c)].into_iter().flatten().collect()
}

/// The first failing check, with its witness, of the crossed-module check
/// followed by the cone check.
pub fn detection(c: &CrossedModule) -> Option<(String, String)> {
    match check_crossed_module(c) {
        Err(e) => return Some(("refused".into(), e.to_string())),
        Ok(v) => {
            if let Some(f) = v.first_failure() {
                return Some((f.name.clone(), f.witness.clone().unwrap_or_default()));
            }
        }
    }
    let v = check_lie3_strict(&mapping_cone(c).ok()?);
    v.first_failure().map(|f| (format!("mapping cone: {}", f.name), f.witness.clone().unwrap_or_default()))
}

/// Single-constant perturbations of a cone: each nonzero constant doubled, then
/// `+1` on each binary bracket slot `(i, j) → out` of the right degree.
pub fn cone_perturbations(cone: &Lie3Algebra) -> Vec<Lie3Algebra> {
    let mut out = Vec::new();
    for (_, t, o, val) in cone.entries() {
        let mut x = cone.clone();
        x.perturb(&t, o, &val);
        out.push(x);
    }
    let dims = cone.space.dims();
    let start = |d: usize| dims[..d].iter().sum::<usize>();
    let degree = |i: usize| (0..3).rev().find(|&d| i >= start(d)).unwrap_or(0);
    let total: usize = dims.iter().sum();
    for i in 0..total {
        for j in i + 1..total {
            let d = degree(i) + degree(j);
            if d > 2 {
                continue;
            }
            for o in start(d)..start(d) + dims[d] {
                let mut x = cone.clone();
                x.perturb(&[i, j], o, &q(1));
                out.push(x);
            }
        }
    }
    out
}

/// Name and witness of the first detected cone perturbation.
pub fn cone_detection(cone: &Lie3Algebra) -> Option<(String, String)> {
    cone_perturbations(cone).iter().find_map(|x| {
        check_lie3_strict(x).first_failure().map(|f| (f.name.clone(), f.witness.clone().unwrap_or_default()))
    })
}
