mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{add_errors, f27_code, random_message};
use gsdec::{derive_params, gsa_decode, hamming_distance, Elem, Field, GrsCode, Mode, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn as_set(list: &[gsdec::Candidate]) -> BTreeSet<Vec<u16>> {
    list.iter()
        .map(|c| c.codeword.iter().map(|e| e.0).collect())
        .collect()
}

#[test]
fn toy_code_lists_are_complete() {
    let f = Arc::new(Field::prime(7).unwrap());
    let code = GrsCode::inverse_powers(f.clone(), 6, 2).unwrap();
    // radius 16/5: one beyond half the minimum distance
    let params = derive_params(&code, 2, 4).unwrap();
    assert_eq!(params.eps_max, 3);
    let all: Vec<Vec<Elem>> = (0..7u16)
        .flat_map(|a| (0..7u16).map(move |b| (a, b)))
        .map(|(a, b)| code.encode(&Poly::from_values(&[a, b])).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nonempty = 0;
    for trial in 0..50 {
        let y: Vec<Elem> = if trial % 2 == 0 {
            (0..6).map(|_| Elem(rng.gen_range(0..7))).collect()
        } else {
            let c = code.encode(&random_message(&code, &mut rng)).unwrap();
            add_errors(&code, &c, 3, &mut rng)
        };
        let expected: BTreeSet<Vec<u16>> = all
            .iter()
            .filter(|c| hamming_distance(c, &y).unwrap() as i64 <= params.eps_max)
            .map(|c| c.iter().map(|e| e.0).collect())
            .collect();
        for mode in Mode::ALL {
            let res = gsa_decode(&code, &params, &y, mode).unwrap();
            assert!(res.list.len() <= params.ell);
            assert_eq!(as_set(&res.list), expected, "trial {trial}, mode {mode}");
            for cand in &res.list {
                assert_eq!(code.encode(&cand.message).unwrap(), cand.codeword);
                assert_eq!(hamming_distance(&cand.codeword, &y).unwrap(), cand.distance);
            }
        }
        nonempty += usize::from(!expected.is_empty());
    }
    assert!(nonempty >= 25);
}

#[test]
fn modes_agree_on_the_f27_code() {
    let code = f27_code();
    let params = derive_params(&code, 10, 13).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    for trial in 0..20 {
        let c = code.encode(&random_message(&code, &mut rng)).unwrap();
        let weight = rng.gen_range(0..=params.eps_max as usize);
        let y = add_errors(&code, &c, weight, &mut rng);
        let lists: Vec<BTreeSet<Vec<u16>>> = Mode::ALL
            .iter()
            .map(|&m| {
                let res = gsa_decode(&code, &params, &y, m).unwrap();
                assert!(res.contains(&c), "trial {trial}, mode {m}");
                as_set(&res.list)
            })
            .collect();
        assert!(lists.windows(2).all(|w| w[0] == w[1]), "trial {trial}");
    }
}

#[test]
fn random_instances_over_binary_field() {
    let f = Arc::new(Field::new(2, 4, None).unwrap());
    let code = GrsCode::inverse_powers(f, 15, 5).unwrap();
    // p = 2 with (r, ell) = (2, 3) has no zero column; (4, 5) does
    for (r, ell) in [(2, 3), (4, 5)] {
        let params = derive_params(&code, r, ell).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(16 + r as u64);
        for _ in 0..5 {
            let c = code.encode(&random_message(&code, &mut rng)).unwrap();
            let y = add_errors(&code, &c, params.eps_max as usize, &mut rng);
            let mut lists = Vec::new();
            for mode in Mode::ALL {
                let res = gsa_decode(&code, &params, &y, mode).unwrap();
                assert!(res.contains(&c));
                lists.push(as_set(&res.list));
            }
            assert!(lists.windows(2).all(|w| w[0] == w[1]));
        }
    }
}

#[test]
fn general_multipliers_decode() {
    let f = Arc::new(Field::new(3, 3, None).unwrap());
    let pts: Vec<Elem> = (0..20i64).map(|i| f.alpha_pow(-i)).collect();
    let mults: Vec<Elem> = (0..20i64).map(|i| f.alpha_pow(5 * i + 1)).collect();
    let code = GrsCode::new(f, 8, pts.clone(), Some(mults), Some(pts)).unwrap();
    let params = derive_params(&code, 3, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let c = code.encode(&random_message(&code, &mut rng)).unwrap();
        let y = add_errors(&code, &c, params.eps_max as usize, &mut rng);
        for mode in Mode::ALL {
            assert!(
                gsa_decode(&code, &params, &y, mode).unwrap().contains(&c),
                "{mode}"
            );
        }
    }
}
