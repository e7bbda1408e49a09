//! The pseudo-character laboratory: soundness of the axioms on honest
//! representations, reducibility modulo pairing ideals across catalog
//! instances, the Nakayama/cohomology generator bound, and the headline
//! experiment — pseudo-characters over F_3[e]/(e^2) and F_3[x,y]/(x,y)^2
//! that provably arise from no representation, certified by exhaustive
//! search.

use pdcheck_core::cohomdim;
use pdcheck_core::pseudorep::{
    all_characters, arises_from_representation, brute_h1_dimension, enumerate_deformations,
    find_splitting_element, free_rank_one_transport, mat_trace, minimal_generator_count,
    nullspace_basis, sample_representation, DeskGma, FiniteGroupPresentation, FiniteLocalRing,
    PseudoCharacterTable, SampleRng, SearchConfig, SearchOutcome,
};
use std::rc::Rc;

/// chi_1 / chi_2 as a residue table mod p.
fn residual_quotient(chi1: &[u64], chi2: &[u64], p: u64) -> Vec<u64> {
    chi1.iter()
        .zip(chi2)
        .map(|(&a, &b)| a * pdcheck_core::arith::invmod(b, p) % p)
        .collect()
}

#[test]
fn sampled_representations_satisfy_the_axioms() {
    let rings = [
        FiniteLocalRing::prime_field(3).unwrap(),
        FiniteLocalRing::prime_field(5).unwrap(),
        FiniteLocalRing::dual_numbers(3).unwrap(),
        FiniteLocalRing::z_mod_p_squared(3).unwrap(),
        FiniteLocalRing::square_zero_plane(3).unwrap(),
    ];
    let groups = [
        FiniteGroupPresentation::cyclic(4).unwrap(),
        FiniteGroupPresentation::cyclic(6).unwrap(),
        FiniteGroupPresentation::s3().unwrap(),
        FiniteGroupPresentation::dihedral(4).unwrap(),
    ];
    let mut rng = SampleRng::new(0xA11CE);
    for ring in &rings {
        for group in &groups {
            let characters = all_characters(ring, group);
            for _ in 0..30 {
                let images = sample_representation(ring, group, &characters, &mut rng).unwrap();
                let (table, _) =
                    PseudoCharacterTable::from_representation(Rc::clone(ring), Rc::clone(group), &images)
                        .unwrap();
                assert_eq!(
                    table.verify_axioms(),
                    Ok(()),
                    "ring {}, group {}",
                    ring.tag(),
                    group.tag()
                );
            }
        }
    }
}

/// Every deformation of a residually non-split triangular representation of
/// S_3 over the dual numbers satisfies the axioms, and its trace becomes
/// reducible after passing to the quotient by the pairing ideal. Instances
/// with a free rank-1 B also admit a trace-preserving transport into
/// honest matrices.
#[test]
fn pairing_ideal_reducibility_across_deformations() {
    let ring = FiniteLocalRing::dual_numbers(3).unwrap();
    let group = FiniteGroupPresentation::s3().unwrap();
    // residual: r -> [[1, 1], [0, 1]], s -> [[1, 0], [0, -1]] — the
    // non-split extension of the sign character by the trivial one
    let residual = [[1u64, 1, 0, 1], [1u64, 0, 0, 2]];
    let lifts = enumerate_deformations(&ring, &group, &residual);
    assert!(!lifts.is_empty());
    let mut nonzero_pairing_instances = 0usize;
    let mut transported_instances = 0usize;
    for images in &lifts {
        let (table, rep) =
            PseudoCharacterTable::from_representation(Rc::clone(&ring), Rc::clone(&group), images)
                .unwrap();
        assert_eq!(table.verify_axioms(), Ok(()));
        let gma = DeskGma::from_representation(Rc::clone(&ring), &group, &rep, None).unwrap();
        if !gma.pairing_ideal_is_zero() {
            nonzero_pairing_instances += 1;
        }
        assert!(gma.annihilator_transfers_to_pairing());
        let reduced = table.reduce_modulo_ideal(&gma.pairing_ideal).unwrap();
        assert!(
            reduced.is_reducible().unwrap().is_some(),
            "trace must split modulo the pairing ideal"
        );
        // when the pairing ideal vanishes the trace itself splits
        if gma.pairing_ideal_is_zero() {
            assert!(table.is_reducible().unwrap().is_some());
        }
        if gma.free_rank_one_generator().is_some() {
            let transported = free_rank_one_transport(&gma, &group, &rep).unwrap();
            for g in group.elements() {
                assert_eq!(
                    mat_trace(&ring, &transported[g as usize]),
                    table.t[g as usize]
                );
            }
            transported_instances += 1;
        }
    }
    // deformations with a genuinely nonzero pairing ideal exist, and so do
    // free rank-1 instances
    assert!(nonzero_pairing_instances > 0);
    assert!(transported_instances > 0);
}

/// Adapted instances (a diagonal splitting element) obey the Nakayama
/// bound: the minimal generator count of B never exceeds dim H^1(G, chi),
/// and likewise for C.
#[test]
fn nakayama_bound_against_brute_force_cohomology() {
    let ring = FiniteLocalRing::dual_numbers(3).unwrap();
    let group = FiniteGroupPresentation::s3().unwrap();
    // residual: diagonal 1 ⊕ sign
    let residual = [[1u64, 0, 0, 1], [1u64, 0, 0, 2]];
    let lifts = enumerate_deformations(&ring, &group, &residual);
    assert!(!lifts.is_empty());
    let sign: Vec<u64> = group.elements().map(|g| if g < 3 { 1 } else { 2 }).collect();
    let trivial: Vec<u64> = vec![1; 6];
    let h1_chi = brute_h1_dimension(&group, &residual_quotient(&trivial, &sign, 3), 3);
    let h1_chi_inv = brute_h1_dimension(&group, &residual_quotient(&sign, &trivial, 3), 3);
    assert_eq!((h1_chi, h1_chi_inv), (1, 1));
    let mut checked = 0usize;
    for images in &lifts {
        let (_, rep) =
            PseudoCharacterTable::from_representation(Rc::clone(&ring), Rc::clone(&group), images)
                .unwrap();
        let Some(g0) = find_splitting_element(&ring, &group, &rep) else {
            continue;
        };
        let gma = DeskGma::from_representation(Rc::clone(&ring), &group, &rep, Some(g0)).unwrap();
        assert!(minimal_generator_count(&ring, &gma.b_module) <= h1_chi);
        assert!(minimal_generator_count(&ring, &gma.c_module) <= h1_chi_inv);
        checked += 1;
    }
    assert!(checked > 0, "adapted instances exist");
}

/// ε-part residual vector of every linearized axiom expression for the
/// direction delta over F_p[e], computed by honest ring arithmetic. The
/// axiom system is affine-linear in delta because the maximal ideal
/// squares to zero, so these vectors are the columns of the constraint
/// matrix whose nullspace is the tangent space of pseudo-deformations.
fn axiom_residuals(
    ring: &Rc<FiniteLocalRing>,
    group: &Rc<FiniteGroupPresentation>,
    t_bar: &[u64],
    delta: &[u64],
) -> Vec<u64> {
    let p = ring.p();
    let t: Vec<u32> = t_bar
        .iter()
        .zip(delta)
        .map(|(&b, &d)| (b + p * d) as u32)
        .collect();
    let table = PseudoCharacterTable::from_trace(Rc::clone(ring), Rc::clone(group), t, None);
    let eps_part = |x: u32| (x as u64) / p;
    let mut out = Vec::new();
    out.push(eps_part(table.t[group.identity() as usize]));
    for g in group.elements() {
        for h in group.elements() {
            let symmetric = ring.sub(
                table.t[group.mul(g, h) as usize],
                table.t[group.mul(h, g) as usize],
            );
            out.push(eps_part(symmetric));
            let mult = ring.sub(
                table.d[group.mul(g, h) as usize],
                ring.mul(table.d[g as usize], table.d[h as usize]),
            );
            out.push(eps_part(mult));
        }
    }
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            for k in group.elements() {
                let mut acc = ring.mul(
                    ring.mul(table.t[g as usize], table.t[h as usize]),
                    table.t[k as usize],
                );
                acc = ring.sub(acc, ring.mul(table.t[g as usize], table.t[group.mul(h, k) as usize]));
                acc = ring.sub(acc, ring.mul(table.t[h as usize], table.t[group.mul(g, k) as usize]));
                acc = ring.sub(acc, ring.mul(table.t[k as usize], table.t[gh as usize]));
                acc = ring.add(acc, table.t[group.mul(gh, k) as usize]);
                acc = ring.add(acc, table.t[group.mul(group.mul(g, k), h) as usize]);
                out.push(eps_part(acc));
            }
        }
    }
    out
}

/// The headline experiment. Over the generalized dihedral group
/// G = C_2 ⋉ (C_3 x C_3) both H^1(G, chi) and H^1(G, chi^{-1}) are
/// 2-dimensional, so the necessary condition min(m, n) = 1 for
/// representability fails and non-representable pseudo-characters can
/// exist. The test computes the full tangent space of first-order
/// pseudo-deformations of tr(1 ⊕ chi) by linear algebra, certifies by
/// exhaustive search that every nonzero direction fails to arise from a
/// representation over F_3[e]/(e^2), and then assembles a two-parameter
/// table over F_3[x,y]/(x,y)^2 whose failure is certified the same way.
#[test]
fn pseudo_character_with_no_representation_is_certified() {
    let eps_ring = FiniteLocalRing::dual_numbers(3).unwrap();
    let group = FiniteGroupPresentation::generalized_dihedral(3, 3).unwrap();
    let p = 3u64;
    let size = group.size();

    // chi = the sign character; m = n = 2, so the necessity criterion fails
    let chi: Vec<u64> = group.elements().map(|g| if g < 9 { 1 } else { 2 }).collect();
    let trivial: Vec<u64> = vec![1; size];
    let m = brute_h1_dimension(&group, &chi, p);
    let n = brute_h1_dimension(&group, &residual_quotient(&trivial, &chi, p), p);
    assert_eq!((m, n), (2, 2));
    assert_eq!(cohomdim::representation_necessity(2, 2, true), Ok(false));

    let t_bar: Vec<u64> = group
        .elements()
        .map(|g| (1 + chi[g as usize]) % p)
        .collect();

    // tangent space of first-order pseudo-deformations, by linear algebra
    let n_rows = axiom_residuals(&eps_ring, &group, &t_bar, &vec![0; size]).len();
    let mut rows: Vec<Vec<u64>> = vec![vec![0u64; size]; n_rows];
    for g in 0..size {
        let mut e = vec![0u64; size];
        e[g] = 1;
        for (r, &v) in axiom_residuals(&eps_ring, &group, &t_bar, &e).iter().enumerate() {
            rows[r][g] = v;
        }
    }
    let basis = nullspace_basis(&mut rows, size, p);
    assert_eq!(basis.len(), 3, "tangent space dimension");

    // every nonzero tangent direction gives a valid pseudo-character over
    // the dual numbers that arises from NO representation
    let mut certified = 0usize;
    for idx in 1..3usize.pow(3) {
        let mut coeffs = [0u64; 3];
        let mut x = idx;
        for c in &mut coeffs {
            *c = (x % 3) as u64;
            x /= 3;
        }
        let delta: Vec<u64> = (0..size)
            .map(|g| {
                coeffs
                    .iter()
                    .zip(&basis)
                    .map(|(&c, b)| c * b[g])
                    .sum::<u64>()
                    % p
            })
            .collect();
        let t: Vec<u32> = t_bar
            .iter()
            .zip(&delta)
            .map(|(&b, &d)| (b + p * d) as u32)
            .collect();
        let table = PseudoCharacterTable::from_trace(
            Rc::clone(&eps_ring),
            Rc::clone(&group),
            t,
            Some((trivial.clone(), chi.clone())),
        );
        assert_eq!(table.verify_axioms(), Ok(()));
        assert!(table.is_reducible().unwrap().is_none());
        let outcome =
            arises_from_representation(&table, &SearchConfig { budget: 100_000_000 }).unwrap();
        assert!(
            matches!(outcome, SearchOutcome::CertifiedAbsent { .. }),
            "direction {delta:?}: {outcome:?}"
        );
        certified += 1;
    }
    assert_eq!(certified, 26);

    // the two-parameter table over F_3[x,y]/(x,y)^2 along two independent
    // directions (square-zero-plane encoding a + p b + p^2 c)
    let xy_ring = FiniteLocalRing::square_zero_plane(3).unwrap();
    let t_xy: Vec<u32> = (0..size)
        .map(|g| (t_bar[g] + p * basis[0][g] + p * p * basis[1][g]) as u32)
        .collect();
    let xy_table = PseudoCharacterTable::from_trace(
        Rc::clone(&xy_ring),
        Rc::clone(&group),
        t_xy,
        Some((trivial, chi)),
    );
    assert_eq!(xy_table.verify_axioms(), Ok(()));
    let outcome =
        arises_from_representation(&xy_table, &SearchConfig { budget: 2_000_000_000 }).unwrap();
    match outcome {
        SearchOutcome::CertifiedAbsent { visited } => assert!(visited > 0),
        other => panic!("expected certified absence over F_3[x,y]/(x,y)^2, got {other:?}"),
    }
}

/// Independent oracle for the search engine: enumerate ALL pairs of 2x2
/// matrices over F_3[e] defining a homomorphism of S_3 and collect every
/// achievable trace table. The constrained search's verdicts must match
/// the oracle on every first-order pseudo-deformation direction.
#[test]
fn search_certificates_agree_with_full_enumeration_oracle() {
    use pdcheck_core::pseudorep::{mat_mul, mat_trace};
    let ring = FiniteLocalRing::dual_numbers(3).unwrap();
    let group = FiniteGroupPresentation::s3().unwrap();
    let identity = [ring.one(), ring.zero(), ring.zero(), ring.one()];
    let n = ring.size() as u32;
    let all: Vec<[u32; 4]> = (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).flat_map(move |c| (0..n).map(move |d| [a, b, c, d]))))
        .collect();
    let mut trace_tables = std::collections::BTreeSet::new();
    let mut hom_count = 0u64;
    for rm in &all {
        let r2 = mat_mul(&ring, rm, rm);
        if mat_mul(&ring, &r2, rm) != identity {
            continue;
        }
        for sm in &all {
            if mat_mul(&ring, sm, sm) != identity {
                continue;
            }
            if mat_mul(&ring, &mat_mul(&ring, sm, rm), sm) != r2 {
                continue;
            }
            hom_count += 1;
            let sr = mat_mul(&ring, sm, rm);
            let sr2 = mat_mul(&ring, sm, &r2);
            trace_tables.insert(vec![
                mat_trace(&ring, &identity),
                mat_trace(&ring, rm),
                mat_trace(&ring, &r2),
                mat_trace(&ring, sm),
                mat_trace(&ring, &sr),
                mat_trace(&ring, &sr2),
            ]);
        }
    }
    assert!(hom_count > 0);
    // every first-order direction delta: the search verdict equals oracle
    // membership of the trace table t_bar + eps*delta
    let sign: Vec<u64> = group.elements().map(|g| if g < 3 { 1 } else { 2 }).collect();
    let trivial = vec![1u64; 6];
    let t_bar: Vec<u64> = group.elements().map(|g| (1 + sign[g as usize]) % 3).collect();
    let mut agreements = 0usize;
    for idx in 0..3usize.pow(6) {
        let mut delta = vec![0u64; 6];
        let mut x = idx;
        for d in &mut delta {
            *d = (x % 3) as u64;
            x /= 3;
        }
        let t: Vec<u32> = t_bar
            .iter()
            .zip(&delta)
            .map(|(&b, &d)| (b + 3 * d) as u32)
            .collect();
        let table = PseudoCharacterTable::from_trace(
            Rc::clone(&ring),
            Rc::clone(&group),
            t.clone(),
            Some((trivial.clone(), sign.clone())),
        );
        // only honest pseudo-characters go to the search
        if table.verify_axioms().is_err() {
            assert!(!trace_tables.contains(&t), "non-pseudo-character realized by a representation");
            continue;
        }
        let outcome =
            arises_from_representation(&table, &SearchConfig { budget: 100_000_000 }).unwrap();
        let found = matches!(outcome, SearchOutcome::Found { .. });
        assert_eq!(found, trace_tables.contains(&t), "direction {delta:?}");
        agreements += 1;
    }
    assert!(agreements >= 3, "the tangent space has at least 3 points");
}

/// Round-trip: tables built from representations are recovered by the
/// search across several catalog pairs.
#[test]
fn search_recovers_representations_across_catalog() {
    let cases: Vec<(Rc<FiniteLocalRing>, Rc<FiniteGroupPresentation>)> = vec![
        (
            FiniteLocalRing::prime_field(5).unwrap(),
            FiniteGroupPresentation::s3().unwrap(),
        ),
        (
            FiniteLocalRing::dual_numbers(3).unwrap(),
            FiniteGroupPresentation::cyclic(6).unwrap(),
        ),
        (
            FiniteLocalRing::z_mod_p_squared(3).unwrap(),
            FiniteGroupPresentation::cyclic(2).unwrap(),
        ),
    ];
    let mut rng = SampleRng::new(0xBEEF);
    for (ring, group) in &cases {
        let characters = all_characters(ring, group);
        let images = sample_representation(ring, group, &characters, &mut rng).unwrap();
        let (table, _) =
            PseudoCharacterTable::from_representation(Rc::clone(ring), Rc::clone(group), &images)
                .unwrap();
        let outcome = arises_from_representation(&table, &SearchConfig::default()).unwrap();
        match outcome {
            SearchOutcome::Found { images: found, .. } => {
                let (check, _) = PseudoCharacterTable::from_representation(
                    Rc::clone(ring),
                    Rc::clone(group),
                    &found,
                )
                .unwrap();
                assert_eq!(check.t, table.t, "ring {}", ring.tag());
                assert_eq!(check.d, table.d);
            }
            other => panic!("expected Found for {}/{}: {other:?}", ring.tag(), group.tag()),
        }
    }
}
