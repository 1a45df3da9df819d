mod common;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use residuum::residue::{
    annihilator, enumerate_annihilators, independence_report, multiplicity_ep, residue_current, Analysis, Coefficient,
    SweepOptions,
};
use residuum::{newton_polyhedron, ExpVec, MonomialIdeal, MonomialSeq, MultiIndex, Weight};

fn seq(rows: &[Vec<u64>]) -> MonomialSeq {
    let n = rows[0].len();
    MonomialSeq::new(n, rows.iter().map(|r| ExpVec::from(r.clone())).collect()).unwrap()
}

fn random_weight(rng: &mut ChaCha8Rng, m: usize) -> Weight {
    Weight::new((0..m).map(|_| rng.gen_range(1..=4)).collect()).unwrap()
}

fn gens_i64(j: &MonomialIdeal) -> Vec<Vec<i64>> {
    j.gens().iter().map(|g| common::to_i64(g.coords())).collect()
}

#[test]
fn essential_pairs_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe55e);
    for _ in 0..300 {
        let rows = common::random_cofinite(&mut rng, 2, 7, 4);
        let a = seq(&rows);
        let p = random_weight(&mut rng, rows.len());
        let got: Vec<Vec<usize>> = Analysis::new(&a, &p)
            .unwrap()
            .essential
            .iter()
            .map(|e| e.index.positions().to_vec())
            .collect();
        let mut want: Vec<Vec<usize>> = common::essential_pairs_2d(&rows, p.entries())
            .into_iter()
            .map(|(i, j)| vec![i, j])
            .collect();
        want.sort();
        assert_eq!(got, want, "{rows:?} at {p}");
    }
}

#[test]
fn annihilator_matches_pure_power_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa22);
    for _ in 0..150 {
        let rows = common::random_cofinite(&mut rng, 2, 6, 4);
        let a = seq(&rows);
        let p = random_weight(&mut rng, rows.len());
        let ann = annihilator(&a, &p).unwrap();
        let alphas: Vec<[i64; 2]> = common::essential_pairs_2d(&rows, p.entries())
            .into_iter()
            .map(|(i, j)| [(rows[i][0] + rows[j][0]) as i64, (rows[i][1] + rows[j][1]) as i64])
            .collect();
        let top = alphas.iter().flatten().copied().max().unwrap();
        let g = gens_i64(&ann);
        for x in common::box_points(2, top + 1) {
            let want = alphas.iter().all(|al| x[0] >= al[0] || x[1] >= al[1]);
            assert_eq!(common::generated_by(&x, &g), want, "{rows:?} at {p}, x = {x:?}");
        }
    }
}

#[test]
fn annihilator_is_invariant_under_reordering() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e7);
    for k in 0..80 {
        let n = 2 + k % 2;
        let rows = common::random_cofinite(&mut rng, n, 5, 3);
        let p = random_weight(&mut rng, rows.len());
        let mut order: Vec<usize> = (0..rows.len()).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let rows2: Vec<Vec<u64>> = order.iter().map(|&i| rows[i].clone()).collect();
        let p2 = Weight::new(order.iter().map(|&i| p.entries()[i]).collect()).unwrap();
        assert_eq!(
            annihilator(&seq(&rows), &p).unwrap(),
            annihilator(&seq(&rows2), &p2).unwrap(),
            "{rows:?} at {p}"
        );
    }
}

#[test]
fn regular_sequences_have_one_known_entry() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4e6);
    for k in 0..60 {
        let n = 1 + k % 3;
        let mut rows = Vec::new();
        for axis in 0..n {
            let mut v = vec![0; n];
            v[axis] = rng.gen_range(1..=6);
            rows.push(v);
        }
        rows.reverse();
        let a = seq(&rows);
        let p = random_weight(&mut rng, n);
        let cur = residue_current(&a, &p).unwrap();
        let live: Vec<_> = cur.nonvanishing().collect();
        assert_eq!(live.len(), 1);
        assert_eq!(live[0].coeff, Some(Coefficient::Known));
        let alpha: Vec<u64> = (0..n).map(|j| rows.iter().map(|r| r[j]).sum()).collect();
        assert_eq!(live[0].alpha.coords(), alpha.as_slice());
        assert_eq!(annihilator(&a, &p).unwrap(), a.ideal());
        let e = multiplicity_ep(&a, &p).unwrap();
        let vol: u64 = rows.iter().map(|r| r.iter().sum::<u64>()).product();
        assert_eq!(e.exact(), Some(&BigRational::from_integer(vol.into())));
    }
}

#[test]
fn unit_weight_multiplicity_is_the_volume() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x501);
    for k in 0..120 {
        let n = 2 + k % 2;
        let rows = common::random_cofinite(&mut rng, n, 6, 4);
        let a = seq(&rows);
        let e = multiplicity_ep(&a, &Weight::ones(rows.len())).unwrap();
        let vol = newton_polyhedron(a.exps(), n).unwrap().complement_volume();
        let vol = BigRational::from_integer(vol);
        if n == 2 {
            assert_eq!(e.determined(), Some(&vol), "{rows:?}");
        } else if let Some(v) = e.exact() {
            assert_eq!(v, &vol, "{rows:?}");
        }
    }
}

#[test]
fn sweep_parallel_equals_sequential() {
    let a = seq(&[vec![5, 0], vec![4, 1], vec![2, 2], vec![0, 3]]);
    let seq_run = enumerate_annihilators(&a, 4, SweepOptions::default()).unwrap();
    let par_run = enumerate_annihilators(
        &a,
        4,
        SweepOptions {
            parallel: true,
            force: false,
        },
    )
    .unwrap();
    assert_eq!(seq_run, par_run);
    assert_eq!(seq_run.evaluated, 256);
    assert_eq!(seq_run.entries.iter().map(|e| e.count).sum::<u64>(), 256);
    for e in &seq_run.entries {
        assert_eq!(annihilator(&a, &e.weight).unwrap(), e.ideal);
    }

    let reg = seq(&[vec![3, 0], vec![0, 2]]);
    for p_max in 1..=5 {
        assert_eq!(
            enumerate_annihilators(&reg, p_max, SweepOptions::default())
                .unwrap()
                .entries
                .len(),
            1
        );
    }
}

#[test]
fn duplicate_generator_case() {
    let a = seq(&[vec![2, 0], vec![0, 3], vec![2, 0]]);
    let rep = independence_report(&a).unwrap();
    assert!(!rep.regular);
    assert!(!rep.current_independent);
    assert!(rep.ann_independent);
    let (p1, p2) = rep.current_witness.expect("weights with different currents");
    let live = |p: &Weight| -> Vec<MultiIndex> {
        residue_current(&a, p)
            .unwrap()
            .nonvanishing()
            .map(|e| e.index.clone())
            .collect()
    };
    assert_ne!(live(&p1), live(&p2));
    assert!(rep.ann_witness.is_none());
    // cross-check by sweeping
    let sweep = enumerate_annihilators(&a, 4, SweepOptions::default()).unwrap();
    assert_eq!(sweep.entries.len(), 1);
    assert_eq!(sweep.entries[0].ideal, a.ideal());
}

#[test]
fn nonregular_random_inputs_have_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3c3);
    for _ in 0..40 {
        let rows = common::random_cofinite(&mut rng, 2, 5, 3);
        let a = seq(&rows);
        let rep = independence_report(&a).unwrap();
        if !rep.current_independent {
            assert!(rep.current_witness.is_some(), "{rows:?}");
        }
        if !rep.ann_independent {
            let (p1, p2) = rep.ann_witness.expect("witness");
            assert_ne!(annihilator(&a, &p1).unwrap(), annihilator(&a, &p2).unwrap());
        } else {
            let sweep = enumerate_annihilators(&a, 3, SweepOptions::default()).unwrap();
            assert_eq!(sweep.entries.len(), 1, "{rows:?}");
        }
    }
}
