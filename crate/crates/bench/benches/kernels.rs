use criterion::{black_box, criterion_group, criterion_main, Criterion};
use sca_core::crystal::{Crystal, FiniteCrystal};
use sca_core::insertion::word_to_pq;
use sca_core::kr_b2::KrB2;
use sca_core::letter::Letter;
use sca_core::one_row::OneRowCrystal;
use sca_core::rmatrix::{r_one_row, RB2};
use sca_core::sca::{reference_carrier, reference_trace, Automaton};
use sca_core::suites;

fn rmatrix(c: &mut Criterion) {
    let (n, s) = (4, 2);
    let left = KrB2::new(n, s).unwrap().elements();
    let right = KrB2::new(n, 1).unwrap().elements();
    let pairs: Vec<_> = left.iter().step_by(7).flat_map(|a| right.iter().step_by(5).map(move |b| (a.clone(), b.clone()))).collect();
    // a fresh R each time, so the memo does not hide the work
    c.bench_function("R B22⊗B21 n=4, cold", |b| {
        b.iter(|| {
            let r = RB2::new(n, s).unwrap();
            for (x, y) in &pairs {
                black_box(r.apply_with_energy(x, y).unwrap());
            }
        })
    });

    let a = OneRowCrystal { n, s: 3 }.elements();
    let b1 = OneRowCrystal { n, s: 2 }.elements();
    c.bench_function("R B13⊗B12 one-row n=4", |b| {
        b.iter(|| {
            for x in a.iter().step_by(11) {
                for y in &b1 {
                    black_box(r_one_row(x, y).unwrap());
                }
            }
        })
    });
}

fn zero_action(c: &mut Criterion) {
    let kr = KrB2::new(5, 3).unwrap();
    let elems = kr.elements();
    c.bench_function("e_0 on B23 n=5", |b| {
        b.iter(|| {
            for t in &elems {
                black_box(kr.e(0, t));
            }
        })
    });
}

fn insertion(c: &mut Criterion) {
    let n = 4;
    let letters = Letter::all(n);
    let mut words = Vec::new();
    for &a in &letters {
        for &b in &letters {
            for &x in &letters {
                words.push(vec![a, b, x, a]);
            }
        }
    }
    c.bench_function("insertion, 512 words of length 4, n=4", |b| {
        b.iter(|| {
            for w in &words {
                black_box(word_to_pq(n, w).unwrap());
            }
        })
    });
}

fn evolve(c: &mut Criterion) {
    for n in [4, 6] {
        let p = reference_trace(n).unwrap()[0].padded(40);
        let r = reference_carrier(n).unwrap();
        let a = Automaton::new(n).unwrap();
        a.evolve(&p, r).unwrap();
        c.bench_function(&format!("T_{r} sweep, n={n}, {} cells", p.len()), |b| b.iter(|| black_box(a.evolve(&p, r).unwrap())));
    }
}

fn yang_baxter(c: &mut Criterion) {
    let mut g = c.benchmark_group("yang-baxter");
    g.sample_size(10);
    g.bench_function("exhaustive, n=4", |b| b.iter(|| black_box(suites::yang_baxter(4).unwrap())));
    g.finish();
}

criterion_group!(benches, rmatrix, zero_action, insertion, evolve, yang_baxter);
criterion_main!(benches);
