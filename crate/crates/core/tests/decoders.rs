use bitasd::asd::{
    asd_decode, certainly_decodable_asymptotic, certainly_decodable_finite, interpolate, t_of_s, MultiplicityMatrix,
};
use bitasd::channels::{
    awgn_bpsk_transmit, bsc_transmit, reliability_matrix, worst_case_pattern, SoftObservation,
};
use bitasd::decoders::{bgmd_decode, bm_decode, gmd_decode, BgmdConfig};
use bitasd::mas::{pmas, pmas_score_cost, proposed_mas_from_obs};
use bitasd::regions::mixed_region_finite;
use bitasd::rscode::symbols_from_bits;
use bitasd::{CodeSpec, Codeword, Gf};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_codeword(spec: &CodeSpec, rng: &mut ChaCha8Rng) -> Codeword {
    let q = spec.field().q() as u16;
    let msg: Vec<Gf> = (0..spec.k_sym()).map(|_| Gf(rng.random_range(0..q))).collect();
    spec.encode(&msg).unwrap()
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

#[test]
fn bm_corrects_every_pattern_within_radius() {
    let spec = CodeSpec::new(15, 11, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let c = random_codeword(&spec, &mut rng);
    for e in 0..=2usize {
        for f in 0..=(4 - 2 * e) {
            for err_pos in combinations(15, e) {
                let rest: Vec<usize> = (0..15).filter(|p| !err_pos.contains(p)).collect();
                // erasure subsets: exhaustive for e <= 1, sampled otherwise
                let subsets = combinations(rest.len(), f);
                for (idx, sub) in subsets.iter().enumerate() {
                    if e == 2 && idx % 7 != 0 {
                        continue;
                    }
                    let erasures: Vec<usize> = sub.iter().map(|&i| rest[i]).collect();
                    let mut w = c.symbols.clone();
                    for &p in &err_pos {
                        w[p] += Gf(rng.random_range(1..16));
                    }
                    for &p in &erasures {
                        w[p] = Gf(rng.random_range(0..16));
                    }
                    let got = bm_decode(&w, &erasures, &spec).unwrap();
                    assert_eq!(got.as_ref(), Some(&c), "e={e} f={f} {err_pos:?} {erasures:?}");
                }
            }
        }
    }
}

#[test]
fn bm_all_single_and_double_error_values() {
    let spec = CodeSpec::new(15, 11, 4).unwrap();
    let c = spec.encode(&[Gf(7); 11]).unwrap();
    for p in 0..15 {
        for q in p + 1..15 {
            for v in 1..16u16 {
                for u in [1u16, 9, 15] {
                    let mut w = c.symbols.clone();
                    w[p] += Gf(v);
                    w[q] += Gf(u);
                    assert_eq!(bm_decode(&w, &[], &spec).unwrap(), Some(c.clone()));
                }
            }
        }
    }
}

#[test]
fn bm_radius_on_small_code_is_two() {
    let spec = CodeSpec::new(7, 3, 3).unwrap();
    let c = spec.encode(&[Gf(0), Gf(0), Gf(0)]).unwrap();
    let mut failed = false;
    for pos in combinations(7, 3) {
        let mut w = c.symbols.clone();
        for &p in &pos {
            w[p] = Gf(1);
        }
        if bm_decode(&w, &[], &spec).unwrap().as_ref() != Some(&c) {
            failed = true;
        }
    }
    assert!(failed);
}

#[test]
fn interpolation_meets_every_hasse_constraint() {
    let spec = CodeSpec::new(7, 3, 3).unwrap();
    let f = spec.field();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let c = random_codeword(&spec, &mut rng);
    let bits = spec.binary_image(&c.symbols);
    let obs = awgn_bpsk_transmit(&bits, 0.8, &mut rng);
    let pi = reliability_matrix(&obs, &spec).unwrap();
    let mm = pmas(&pi, 4.0);
    let q = interpolate(&mm, &spec, None).unwrap();
    assert!(!q.is_zero());
    for (j, i, mult) in mm.nonzero() {
        let (x, y) = (spec.points()[j], Gf(i as u16));
        for r in 0..mult as usize {
            for s in 0..mult as usize - r {
                assert!(q.hasse_eval(f, r, s, x, y).is_zero(), "point ({j},{i}) D({r},{s})");
            }
        }
    }
}

#[test]
fn noiseless_observation_selects_transmitted() {
    let spec = CodeSpec::new(15, 11, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c = random_codeword(&spec, &mut rng);
    let obs = SoftObservation::noiseless(&spec.binary_image(&c.symbols));
    let mut mm = MultiplicityMatrix::zeros(16, 15);
    for (j, s) in c.symbols.iter().enumerate() {
        mm.set(s.0 as usize, j, 1);
    }
    let res = asd_decode(&mm, &spec, &obs, None).unwrap();
    assert_eq!(res.selected, Some(c));
    for cand in &res.candidates {
        assert!(spec.is_codeword(&cand.symbols));
    }
}

/// Whenever the score/cost guarantee holds, the transmitted codeword is on the
/// list; checked on every placeable worst-case pattern.
fn guarantee_holds_on_worst_case_patterns(spec: &CodeSpec, mults: &[u32]) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let c = random_codeword(spec, &mut rng);
    let (n, m) = (spec.n_sym(), spec.m());
    let mut checked = 0;
    for &mult in mults {
        for e in 0..=n {
            for f in 0..=m * (n - e) {
                let wc = worst_case_pattern(spec, &c, e, f).unwrap();
                let mm = proposed_mas_from_obs(spec, &wc.observation, mult).unwrap();
                let (s, cost) = (mm.score(&c), mm.cost());
                if !certainly_decodable_finite(s, cost, spec.k_sym()) {
                    continue;
                }
                let res = asd_decode(&mm, spec, &wc.observation, None).unwrap();
                assert!(res.candidates.contains(&c), "M={mult} e={e} f={f}");
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn guarantee_on_rs7_3() {
    let spec = CodeSpec::new(7, 3, 3).unwrap();
    guarantee_holds_on_worst_case_patterns(&spec, &[2, 4, 6]);
}

#[test]
fn guarantee_on_rs15_11() {
    let spec = CodeSpec::new(15, 11, 4).unwrap();
    guarantee_holds_on_worst_case_patterns(&spec, &[2, 4]);
}

#[test]
fn worst_case_region_agrees_with_score_cost_on_patterns() {
    // The region boundary is exactly where the constructed pattern's score
    // and cost stop satisfying the guarantee (e + f <= N).
    let spec = CodeSpec::new(15, 11, 4).unwrap();
    let c = spec.encode(&[Gf(0); 11]).unwrap();
    for mult in [2u32, 4, 6] {
        for f in 0..=15usize {
            for e in 0..=(15 - f) {
                let wc = worst_case_pattern(&spec, &c, e, f).unwrap();
                let mm = proposed_mas_from_obs(&spec, &wc.observation, mult).unwrap();
                let ok = certainly_decodable_finite(mm.score(&c), mm.cost(), 11);
                let inside = e as i64 <= mixed_region_finite(15, 11, mult, f);
                assert_eq!(ok, inside, "M={mult} e={e} f={f}");
            }
        }
    }
}

#[test]
fn bgmd_noiseless_and_region_patterns() {
    let spec = CodeSpec::new(15, 11, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let c = random_codeword(&spec, &mut rng);
    let bits = spec.binary_image(&c.symbols);
    let out = bgmd_decode(&SoftObservation::noiseless(&bits), &spec, &BgmdConfig::new(2)).unwrap();
    assert_eq!(out.selected, Some(c.clone()));
    assert_eq!(out.last_round, 0);

    // Worst-case placement with the erased bits turned into the f least
    // reliable ones (random signs) and every other bit confidently received.
    for mult in [2u32, 4] {
        let cfg = BgmdConfig::new(mult);
        for f in 0..=30usize {
            let e_max = mixed_region_finite(15, 11, mult, f);
            if e_max < 0 {
                continue;
            }
            for e in 0..=e_max as usize {
                let wc = worst_case_pattern(&spec, &c, e, f).unwrap();
                let hard = wc.observation.hard_bits();
                let mut weak = 0;
                let llr: Vec<f64> = (0..60)
                    .map(|i| {
                        if wc.observation.is_erased(i) {
                            weak += 1;
                            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                            sign * 0.01 * weak as f64
                        } else if hard[i] == 0 {
                            5.0
                        } else {
                            -5.0
                        }
                    })
                    .collect();
                let out = bgmd_decode(&SoftObservation::from_llrs(llr), &spec, &cfg).unwrap();
                assert!(out.candidates.contains(&c), "M={mult} e={e} f={f}");
            }
        }
    }
}

#[test]
fn bgmd_dominates_bm_on_random_trials() {
    let spec = CodeSpec::new(15, 11, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let cfg = BgmdConfig::new(2);
    let mut bm_wins = 0;
    for _ in 0..10_000 {
        let c = random_codeword(&spec, &mut rng);
        let bits = spec.binary_image(&c.symbols);
        let obs = awgn_bpsk_transmit(&bits, 0.6, &mut rng);
        let hard = symbols_from_bits(&obs.hard_bits(), 4);
        if bm_decode(&hard, &[], &spec).unwrap().is_some() {
            bm_wins += 1;
            let out = bgmd_decode(&obs, &spec, &cfg).unwrap();
            assert!(out.selected.is_some());
        }
    }
    assert!(bm_wins > 1000);
}

#[test]
fn gmd_outputs_codewords_and_uses_erasures() {
    let spec = CodeSpec::new(15, 11, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..500 {
        let c = random_codeword(&spec, &mut rng);
        let obs = bsc_transmit(&spec.binary_image(&c.symbols), 0.05, &mut rng);
        if let Some(d) = gmd_decode(&obs, &spec).unwrap() {
            assert!(spec.is_codeword(&d.symbols));
        }
    }
    // N - K symbols wiped out with zero confidence and no other errors
    let c = random_codeword(&spec, &mut rng);
    let bits = spec.binary_image(&c.symbols);
    let mut llr: Vec<f64> = bits.iter().map(|&b| if b == 0 { 3.0 } else { -3.0 }).collect();
    for j in [2usize, 5, 9, 14] {
        for b in 0..4 {
            llr[j * 4 + b] = if (j + b) % 2 == 0 { 0.1 } else { -0.1 };
        }
    }
    let got = gmd_decode(&SoftObservation::from_llrs(llr), &spec).unwrap();
    assert_eq!(got, Some(c));
}

#[test]
fn decoders_are_deterministic() {
    let spec = CodeSpec::new(15, 11, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let c = random_codeword(&spec, &mut rng);
    let obs = awgn_bpsk_transmit(&spec.binary_image(&c.symbols), 1.0, &mut rng);
    let cfg = BgmdConfig::new(4);
    assert_eq!(bgmd_decode(&obs, &spec, &cfg), bgmd_decode(&obs, &spec, &cfg));
    assert_eq!(gmd_decode(&obs, &spec), gmd_decode(&obs, &spec));
}

#[test]
fn threshold_function_shape() {
    assert_eq!(t_of_s(10.0, 11), 10.0);
    assert_eq!(t_of_s(30.0, 11), 60.0);
}

#[test]
fn worked_example_split_posteriors() {
    // Every symbol: 0.7 on the sent value, 0.3 on a 1-bit neighbour.
    let spec = CodeSpec::new(255, 239, 8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let truth = random_codeword(&spec, &mut rng);
    let bits = spec.binary_image(&truth.symbols);
    let soft = (0.7f64 / 0.3).ln();
    let llr: Vec<f64> = bits
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let mag = if i % 8 == 0 { soft } else { f64::INFINITY };
            if b == 0 { mag } else { -mag }
        })
        .collect();
    let obs = SoftObservation::from_llrs(llr);
    let pi = reliability_matrix(&obs, &spec).unwrap();
    let mm = pmas(&pi, 10.0);
    assert_eq!(mm.score(&truth), 1785);
    assert_eq!(mm.cost(), 255 * (28 + 6));
    let sc = pmas_score_cost(&pi, &truth);
    assert!((sc.s - 178.5).abs() < 1e-9 && (sc.c - 73.95).abs() < 1e-9);
    assert!(!certainly_decodable_asymptotic(sc, 239));
    let out = bgmd_decode(&obs, &spec, &BgmdConfig::new(2)).unwrap();
    assert_eq!(out.last_round, 0);
    assert_eq!(out.selected.as_ref(), Some(&truth));
}
