//! Acceptance suite: one test per published criterion, each printing a
//! single `criterion N: PASS` line (visible with `--nocapture`).  Assertion
//! messages name the criterion, so a red run identifies the criterion that
//! failed.  "Exact" means a matrix identity or integer equality over the
//! chosen backend; modular results are required to agree across three
//! (prime, seed) specializations.

use framiz::coeff::{ExactField, ModularField, PRIME_LIST};
use framiz::combinat::{
    bmw_dim, bounded_bell, dim_block_sum, dim_bt_bmw, dim_bt_hecke, dim_bt_tl, dim_fbmw,
    dim_fixedpoint_sum, dim_yh, factorial, label_tuples, orbit_of, OrbitClass,
};
use framiz::exactla::commutator;
use framiz::framed::{FramedSetup, TablePreset};
use framiz::rmat::{BlockKind, Boundary};
use framiz::verify::{
    affine_block_dim, check_relations, cyclotomic_check, image_dimension, verify_block_iso, Preset,
};
use framiz::Field;
use num_bigint::BigUint;

use BlockKind::{Gl, So, Sp};

const SEEDS: [u64; 3] = [11, 12, 13];

fn exact(d: u32) -> ExactField {
    ExactField::new(d).expect("exact field")
}

fn modular_fields(d: u32) -> Vec<ModularField> {
    let primes: Vec<u64> = PRIME_LIST
        .iter()
        .copied()
        .filter(|p| (p - 1) % u64::from(d) == 0)
        .take(3)
        .collect();
    assert_eq!(primes.len(), 3, "prime pool must provide 3 primes for d={d}");
    primes
        .iter()
        .zip(SEEDS)
        .map(|(&p, s)| ModularField::new(p, d, s, 64).expect("modular field"))
        .collect()
}

fn setup<F: Field>(f: &F, kinds: &[BlockKind], n: u32, boundary: Option<Boundary>) -> FramedSetup<F> {
    FramedSetup::new(f.clone(), kinds.to_vec(), n, boundary).expect("setup")
}

/// Closure dimension, required to agree across the three specializations.
fn modular_dim(d: u32, kinds: &[BlockKind], n: u32, preset: Preset) -> usize {
    let dims: Vec<usize> = modular_fields(d)
        .iter()
        .map(|f| image_dimension(&setup(f, kinds, n, None), preset).expect("closure"))
        .collect();
    assert!(
        dims.windows(2).all(|w| w[0] == w[1]),
        "modular specializations disagree: {dims:?}"
    );
    dims[0]
}

fn assert_all_hold<F: Field>(f: &F, kinds: &[BlockKind], n: u32, preset: Preset, crit: &str) {
    let s = setup(f, kinds, n, None);
    for r in check_relations(&s, preset).expect("relation evaluation") {
        assert!(
            r.holds,
            "{crit}: relation {} fails on {:?} at n={n}",
            r.name, kinds
        );
    }
}

#[test]
fn criterion_01_r_matrix_suites() {
    for kind in [Gl(2), Gl(3), So(4), So(6), Sp(2), Sp(4)] {
        for f in modular_fields(1) {
            // braid plus the characteristic equation (quadratic for gl,
            // cubic for so/sp) via the framed suite at d=1 ...
            assert_all_hold(&f, &[kind], 3, Preset::Framed, "criterion 1");
            // ... and the full quadratic/tangle suites on top.
            let preset = if kind.is_bmw() { Preset::Bmw } else { Preset::Yh };
            assert_all_hold(&f, &[kind], 3, preset, "criterion 1");
        }
    }
    println!(
        "criterion 1: PASS - braid, characteristic and BMW suites hold for \
         gl2, gl3, so4, so6, sp2, sp4 (3 modular specializations each)"
    );
}

#[test]
fn criterion_02_centralizer_certification() {
    let f = exact(2);
    for kind in [Gl(2), Gl(3)] {
        for n in 1..=3 {
            let s = setup(&f, &[kind; 2], n, None);
            let table = s.assignment_for(TablePreset::Framed).expect("operator table");
            let quantum = s.chevalley().expect("Chevalley action");
            for &sym in table.symbols() {
                let op = table.get(sym).expect("assigned operator");
                for g in &quantum {
                    assert!(
                        commutator(&f, op, g).is_zero(),
                        "criterion 2: [{sym}, Chevalley] != 0 for {} blocks, n={n}",
                        kind.label()
                    );
                }
            }
        }
    }
    println!(
        "criterion 2: PASS - all framed operators commute with the Chevalley \
         actions for gl2, gl3 blocks, n ≤ 3 (exact)"
    );
}

#[test]
fn criterion_03_yokonuma_hecke_dimensions() {
    for (d, kind, n, want) in [(2u32, Gl(2), 2u32, 8usize), (2, Gl(3), 3, 48), (3, Gl(3), 2, 18)] {
        let kinds = vec![kind; d as usize];
        let got = modular_dim(d, &kinds, n, Preset::Yh);
        assert_eq!(
            got, want,
            "criterion 3: closure dim for d={d}, {} blocks, n={n}",
            kind.label()
        );
        assert_eq!(BigUint::from(want), dim_yh(n, d), "criterion 3: n!dⁿ at n={n}, d={d}");
    }
    println!(
        "criterion 3: PASS - Yokonuma–Hecke closures 8, 48, 18 equal n!dⁿ \
         (3 modular specializations)"
    );
}

#[test]
fn criterion_04_framized_temperley_lieb() {
    let f = exact(2);
    assert_all_hold(&f, &[Gl(2); 2], 3, Preset::Ftl, "criterion 4");
    let dim = image_dimension(&setup(&f, &[Gl(2); 2], 3, None), Preset::Ftl).expect("closure");
    assert_eq!(dim, 46, "criterion 4: closure dim for d=2, gl2 blocks, n=3");

    // Negative control: the cubic idempotent relation must fail on gl3.
    let reports = check_relations(&setup(&f, &[Gl(3); 2], 3, None), Preset::Ftl)
        .expect("relation evaluation");
    let ftl: Vec<_> = reports.iter().filter(|r| r.family == "rel-FTL").collect();
    assert!(
        !ftl.is_empty() && ftl.iter().all(|r| !r.holds),
        "criterion 4: rel-FTL must fail on gl3 blocks"
    );
    assert!(
        reports.iter().filter(|r| r.family != "rel-FTL").all(|r| r.holds),
        "criterion 4: the remaining relations must still hold on gl3 blocks"
    );
    println!(
        "criterion 4: PASS - FTL suite holds on gl2 blocks with closure 46; \
         rel-FTL fails on gl3 as required (exact)"
    );
}

#[test]
fn criterion_05_complex_temperley_lieb() {
    let f = exact(2);
    assert_all_hold(&f, &[Gl(2), Gl(3)], 3, Preset::Ctl, "criterion 5");
    let dim = image_dimension(&setup(&f, &[Gl(2), Gl(3)], 3, None), Preset::Ctl).expect("closure");
    assert_eq!(dim, 47, "criterion 5: closure dim for blocks (gl2, gl3), n=3");
    println!(
        "criterion 5: PASS - complex TL suite holds on (gl2, gl3) with \
         closure 47 matching the block formula (exact)"
    );
}

#[test]
fn criterion_06_framized_bmw() {
    for kind in [So(4), Sp(2)] {
        for n in 2..=3 {
            for f in modular_fields(2) {
                assert_all_hold(&f, &[kind; 2], n, Preset::Fbmw, "criterion 6");
            }
        }
    }
    for (n, want) in [(0u32, 1usize), (1, 2), (2, 10)] {
        let got = modular_dim(2, &[So(4); 2], n, Preset::Fbmw);
        assert_eq!(got, want, "criterion 6: so4 closure at n={n}");
        assert_eq!(BigUint::from(want), dim_fbmw(n, 2), "criterion 6: formula at n={n}");
    }
    let got = modular_dim(2, &[So(6); 2], 3, Preset::Fbmw);
    assert_eq!(got, 84, "criterion 6: so6 closure at n=3 (ambient 1728)");
    assert_eq!(BigUint::from(84u32), dim_fbmw(3, 2), "criterion 6: formula at n=3");
    println!(
        "criterion 6: PASS - FBMW suites hold for so4 and sp2 (d=2, n ≤ 3); \
         closures 1, 2, 10 (so4) and 84 (so6, n=3) match the conjectured formula"
    );
}

#[test]
fn criterion_07_braids_and_ties_dimensions() {
    let cases: [(Preset, u32, BlockKind, u32, usize); 5] = [
        (Preset::BtHecke, 2, Gl(2), 2, 4),
        (Preset::BtHecke, 3, Gl(3), 3, 30),
        (Preset::BtTl, 2, Gl(2), 2, 4),
        (Preset::BtTl, 3, Gl(2), 3, 29),
        (Preset::BtBmw, 2, So(4), 2, 5),
    ];
    for (preset, d, kind, n, want) in cases {
        let kinds = vec![kind; d as usize];
        let got = modular_dim(d, &kinds, n, preset);
        assert_eq!(
            got, want,
            "criterion 7: {} closure for d={d}, {} blocks, n={n}",
            preset.name(),
            kind.label()
        );
    }
    println!(
        "criterion 7: PASS - tied closures 4, 30 (BT^Hec), 4, 29 (BT^TL) and 5 \
         (BT^BMW) match the fixed-point formulas (3 modular specializations)"
    );
}

/// The n=3 BT^BMW value lives on a 5832-dimensional ambient space; kept out
/// of the default run, execute with `--ignored` (budget: well under 2 h).
#[test]
#[ignore = "large ambient (5832); run with --ignored"]
fn criterion_07_long_bt_bmw_so6() {
    let got = modular_dim(3, &[So(6); 3], 3, Preset::BtBmw);
    assert_eq!(got, 48, "criterion 7 (long): bt-bmw closure for so6 blocks, d=3, n=3");
    assert_eq!(BigUint::from(48u32), dim_bt_bmw(3, 3), "criterion 7 (long): formula");
    println!("criterion 7 (long): PASS - BT^BMW closure 48 at so6, d=3, n=3 (ambient 5832)");
}

#[test]
fn criterion_08_tied_fixed_point_identities() {
    fn permutations(d: u32) -> Vec<Vec<u32>> {
        if d == 1 {
            return vec![vec![0]];
        }
        let mut out = Vec::new();
        for shorter in permutations(d - 1) {
            for slot in 0..=shorter.len() {
                let mut w = shorter.clone();
                w.insert(slot, d - 1);
                out.push(w);
            }
        }
        out
    }

    for d in [2u32, 3] {
        let f = exact(d);
        for n in 2..=3 {
            let s = setup(&f, &vec![Gl(2); d as usize], n, None);
            let table = s.assignment_for(TablePreset::Tied).expect("operator table");
            for w in permutations(d) {
                let p = s.sd_perm(&w).expect("relabeling matrix");
                for &sym in table.symbols() {
                    assert!(
                        commutator(&f, table.get(sym).expect("assigned operator"), &p).is_zero(),
                        "criterion 8: [{sym}, relabeling {w:?}] != 0 at d={d}, n={n}"
                    );
                }
            }
        }
    }

    for n in 1..=5u32 {
        for d in 1..=5u32 {
            let mut classes: Vec<OrbitClass> = Vec::new();
            for tuple in label_tuples(n, d) {
                let class = orbit_of(&tuple);
                if !classes.contains(&class) {
                    classes.push(class);
                }
            }
            assert_eq!(
                BigUint::from(classes.len()),
                bounded_bell(n, d),
                "criterion 8: orbit classes vs B_d(n) at n={n}, d={d}"
            );
        }
    }
    assert_eq!(bounded_bell(3, 2), BigUint::from(4u32), "criterion 8: B_2(3)");
    assert_eq!(bounded_bell(3, 3), BigUint::from(5u32), "criterion 8: B_3(3)");
    println!(
        "criterion 8: PASS - tied generators commute with every relabeling \
         matrix (exact); orbit-class counts equal B_d(n) for n, d ≤ 5"
    );
}

#[test]
fn criterion_09_block_decomposition() {
    // Scenario list: criteria 3-6 capped at n ≤ 3.
    let scenarios: Vec<(u32, Vec<BlockKind>, u32)> = vec![
        (2, vec![Gl(2); 2], 2),
        (2, vec![Gl(3); 2], 3),
        (3, vec![Gl(3); 3], 2),
        (2, vec![Gl(2); 2], 3),
        (2, vec![Gl(2), Gl(3)], 3),
        (2, vec![So(4); 2], 2),
        (2, vec![So(4); 2], 3),
        (2, vec![Sp(2); 2], 2),
        (2, vec![Sp(2); 2], 3),
        (2, vec![So(6); 2], 3),
    ];
    for (d, kinds, n) in scenarios {
        let runs: Vec<(usize, usize, Vec<(Vec<u32>, usize, usize)>)> = modular_fields(d)
            .iter()
            .map(|f| {
                let rep = verify_block_iso(&setup(f, &kinds, n, None)).expect("block cut");
                assert!(
                    rep.holds(),
                    "criterion 9: block decomposition fails for {kinds:?}, n={n}: \
                     residue {}, rows {:?}",
                    rep.residue,
                    rep.rows
                        .iter()
                        .map(|r| (r.nu.clone(), r.found, r.expected))
                        .collect::<Vec<_>>()
                );
                (
                    rep.residue,
                    rep.closure_dim,
                    rep.rows.iter().map(|r| (r.nu.clone(), r.found, r.expected)).collect(),
                )
            })
            .collect();
        assert!(
            runs.windows(2).all(|w| w[0] == w[1]),
            "criterion 9: modular specializations disagree for {kinds:?}, n={n}"
        );
    }
    println!(
        "criterion 9: PASS - zero off-diagonal residue and per-block dims \
         C(n,ν)²·Π d_ν across all ten criteria-3..6 scenarios (3 modular specializations)"
    );
}

#[test]
fn criterion_10_affine_and_cyclotomic() {
    for d in [1u32, 2] {
        let f = exact(d);
        for boundary in [Boundary::Vector, Boundary::Sym(2)] {
            for n in 1..=2 {
                let s = FramedSetup::new(f.clone(), vec![Gl(2); d as usize], n, Some(boundary))
                    .expect("setup");
                for r in check_relations(&s, Preset::Affine).expect("relation evaluation") {
                    assert!(
                        r.holds,
                        "criterion 10: {} fails (d={d}, {}, n={n})",
                        r.name,
                        boundary.label()
                    );
                }
                let cyc = cyclotomic_check(&s).expect("cyclotomic scenario");
                assert!(
                    cyc.holds(),
                    "criterion 10: cyclotomic check fails (d={d}, {}, n={n})",
                    boundary.label()
                );
                assert_eq!(
                    cyc.minpoly_degree,
                    2,
                    "criterion 10: σ₀ minimal-polynomial degree (d={d}, {}, n={n})",
                    boundary.label()
                );
            }
        }
    }

    let rep = affine_block_dim(
        &FramedSetup::new(exact(1), vec![Gl(2)], 2, Some(Boundary::Sym(2))).expect("setup"),
    )
    .expect("affine dims");
    assert_eq!((rep.closure, rep.formula), (6, 6), "criterion 10: closure at d=1, Sym², n=2");
    let rep = affine_block_dim(
        &FramedSetup::new(exact(2), vec![Gl(2); 2], 2, Some(Boundary::Sym(2))).expect("setup"),
    )
    .expect("affine dims");
    assert_eq!((rep.closure, rep.formula), (28, 28), "criterion 10: closure at d=2, Sym², n=2");
    println!(
        "criterion 10: PASS - affine suites hold for d ≤ 2 with boundaries V \
         and Sym²; σ₀ minimal polynomial has degree 2; closures 6 and 28 match \
         the block formula (exact)"
    );
}

#[test]
fn criterion_11_formula_self_consistency() {
    for n in 0..=6u32 {
        for d in 1..=6u32 {
            let direct = factorial(n) * BigUint::from(d).pow(n);
            assert_eq!(
                dim_block_sum(n, d, factorial),
                direct,
                "criterion 11: block sum vs n!dⁿ at n={n}, d={d}"
            );
            assert_eq!(dim_yh(n, d), direct, "criterion 11: dim_yh at n={n}, d={d}");
        }
    }

    let hecke: [u32; 5] = [1, 1, 4, 30, 360];
    let tl: [u32; 6] = [1, 1, 4, 29, 334, 5512];
    let bmw: [u32; 5] = [1, 1, 5, 48, 747];
    for (n, &want) in hecke.iter().enumerate() {
        let (n, d) = (n as u32, (n as u32).max(1));
        assert_eq!(dim_fixedpoint_sum(n, d, factorial), BigUint::from(want));
        assert_eq!(dim_bt_hecke(n, d), BigUint::from(want), "criterion 11: BT^Hec at n={n}");
    }
    for (n, &want) in tl.iter().enumerate() {
        let (n, d) = (n as u32, (n as u32).max(1));
        assert_eq!(dim_fixedpoint_sum(n, d, framiz::combinat::catalan), BigUint::from(want));
        assert_eq!(dim_bt_tl(n, d), BigUint::from(want), "criterion 11: BT^TL at n={n}");
    }
    for (n, &want) in bmw.iter().enumerate() {
        let (n, d) = (n as u32, (n as u32).max(1));
        assert_eq!(dim_fixedpoint_sum(n, d, bmw_dim), BigUint::from(want));
        assert_eq!(dim_bt_bmw(n, d), BigUint::from(want), "criterion 11: BT^BMW at n={n}");
    }

    // Conjecture evidence, formula side only: the matrix-side n ∈ {4, 5}
    // closures need blocks of vector dimension ≥ 2n and stay out of reach.
    let fbmw_d2: [u32; 6] = [1, 2, 10, 84, 1014, 16140];
    for (n, &want) in fbmw_d2.iter().enumerate() {
        let n = n as u32;
        assert_eq!(dim_fbmw(n, 2), BigUint::from(want), "criterion 11: FBMW formula at n={n}");
        assert_eq!(dim_block_sum(n, 2, bmw_dim), BigUint::from(want));
    }
    println!(
        "criterion 11: PASS - block sums equal n!dⁿ (n, d ≤ 6); fixed-point \
         sums reproduce the three tied sequences; FBMW block formula gives \
         1, 2, 10, 84, 1014, 16140 at d=2 (n ∈ {{4, 5}} as conjecture evidence, \
         formula side only)"
    );
}
