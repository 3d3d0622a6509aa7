//! Acceptance suite. Every criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails. All comparisons are exact.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{pascal, random_unimodular, test_fans};
use toric_pvf::exact_linalg::{kernel_dim_of_wedge_maps, rank_of_rows, LatticeVector};
use toric_pvf::fan::Fan;
use toric_pvf::generators::{hirzebruch, product_projective, projective_space};
use toric_pvf::methods::MethodRegistry;
use toric_pvf::model::ToricModel;
use toric_pvf::oracle::{
    crosscheck, is_holomorphic_on_chart, outward_shift, weight_space_dim_by_charts,
};
use toric_pvf::pvf::{decomposition, dims_by_face_formula};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn model(fan: Fan) -> ToricModel {
    ToricModel::new(fan).expect("test fan validates")
}

/// Formula, kernel and chart totals for every k, plus a full crosscheck.
fn agree_all(m: &ToricModel, margin: i64) -> Result<Vec<usize>, String> {
    let mut dims = Vec::new();
    for k in 0..=m.dim() {
        let r = crosscheck(m, k, margin).map_err(|e| e.to_string())?;
        ensure!(r.passed(), "{} k={k}: {:?}", m.label(), r.failures);
        let t = r.totals;
        ensure!(
            t.formula == t.kernel && t.kernel == t.charts,
            "{} k={k}: {t:?}",
            m.label()
        );
        dims.push(t.formula);
    }
    Ok(dims)
}

fn timed<T>(limit: Duration, f: impl FnOnce() -> T) -> Result<(T, Duration), String> {
    let start = Instant::now();
    let v = f();
    let took = start.elapsed();
    ensure!(took < limit, "took {took:?}, limit {limit:?}");
    Ok((v, took))
}

fn ac1_projective_line() -> Check {
    let (dims, took) = timed(Duration::from_millis(100), || {
        agree_all(&model(projective_space(1).unwrap()), 2)
    })?;
    let dims = dims?;
    ensure!(dims == [1, 3], "dims {dims:?}");
    Ok(format!("dims {dims:?} in {took:?}"))
}

fn ac2_projective_plane() -> Check {
    let (res, took) = timed(Duration::from_millis(500), || -> Result<_, String> {
        let m = model(projective_space(2).unwrap());
        let dims = agree_all(&m, 2)?;
        let top = decomposition(m.fan(), m.stratification(), 2).map_err(|e| e.to_string())?;
        let terms = dims_by_face_formula(m.stratification(), 2)
            .map_err(|e| e.to_string())?
            .terms;
        Ok((dims, top, terms))
    })?;
    let (dims, top, terms) = res?;
    ensure!(dims == [1, 8, 10], "dims {dims:?}");

    // lattice points of the triangle (-1,-1), (2,-1), (-1,2), from the vertices alone
    let verts = [(-1i64, -1i64), (2, -1), (-1, 2)];
    let side = |(ax, ay): (i64, i64), (bx, by): (i64, i64), (px, py): (i64, i64)| {
        (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    };
    let mut triangle = BTreeSet::new();
    for x in -5..=5 {
        for y in -5..=5 {
            let p = (x, y);
            if (0..3).all(|i| side(verts[i], verts[(i + 1) % 3], p) >= 0) {
                triangle.insert(LatticeVector::from([x, y]));
            }
        }
    }
    let weights: BTreeSet<LatticeVector> = top.iter().map(|w| w.weight.clone()).collect();
    ensure!(
        triangle.len() == 10 && weights == triangle,
        "weights {weights:?}"
    );
    ensure!(
        top.iter().all(|w| w.dim == 1),
        "k=2 weight spaces not all 1-dimensional"
    );
    let counts: Vec<usize> = terms.iter().map(|t| t.count).collect();
    let products: Vec<usize> = terms.iter().map(|t| t.product).collect();
    ensure!(
        counts == [1, 6, 3] && products == [1, 6, 3],
        "breakdown {terms:?}"
    );
    Ok(format!(
        "dims {dims:?}, 10 triangle weights, strata (1,6,3) in {took:?}"
    ))
}

fn ac3_projective_three_space() -> Check {
    let (dims, took) = timed(Duration::from_secs(5), || {
        agree_all(&model(projective_space(3).unwrap()), 2)
    })?;
    let dims = dims?;
    ensure!(dims == [1, 15, 45, 35], "dims {dims:?}");
    let n = 3;
    let closed_form: Vec<usize> = (0..=n)
        .map(|k| pascal(n + k + 1, n + 1) * pascal(n, k))
        .collect();
    ensure!(dims == closed_form, "dims {dims:?} vs closed form {closed_form:?}");
    Ok(format!(
        "dims {dims:?} = closed form, crosscheck margin 2 in {took:?}"
    ))
}

fn ac4_hirzebruch() -> Check {
    let mut summary = Vec::new();
    for (a, want) in [(0, 6), (1, 6), (2, 7), (3, 8)] {
        let (res, took) = timed(Duration::from_secs(1), || {
            let m = model(hirzebruch(a).unwrap());
            let points = m.points().len();
            agree_all(&m, 2).map(|d| (d, points))
        })?;
        let (dims, points) = res?;
        ensure!(dims[1] == want, "a={a}: k=1 dim {}", dims[1]);
        ensure!(
            dims[2] == 9 && points == 9,
            "a={a}: k=2 dim {} with {points} points",
            dims[2]
        );
        if a >= 1 {
            ensure!(dims[1] as i64 == a + 5, "a={a}: k=1 dim {} != a+5", dims[1]);
        }
        summary.push(format!("F{a}:{dims:?}/{took:.0?}"));
    }
    Ok(summary.join(" "))
}

fn ac5_product_of_lines() -> Check {
    let p = model(product_projective(&[1, 1]).unwrap()).dimension_table();
    let h = model(hirzebruch(0).unwrap()).dimension_table();
    ensure!(p == h, "tables differ: {p:?} vs {h:?}");
    ensure!(p.totals() == [1, 6, 9], "table {:?}", p.totals());
    Ok(format!("tables identical {:?}", p.totals()))
}

fn ac6_identity_suite() -> Check {
    let registry = MethodRegistry::builtin();
    let charts = registry.get("charts").unwrap();
    let mut checked = 0;
    for (name, fan) in test_fans() {
        let m = model(fan);
        for k in 0..=m.dim() {
            let eq1: usize = decomposition(m.fan(), m.stratification(), k)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|w| w.dim)
                .sum();
            let eq2 = dims_by_face_formula(m.stratification(), k)
                .map_err(|e| e.to_string())?
                .total;
            let ch = charts.total(&m, k, 2).map_err(|e| e.to_string())?;
            ensure!(
                eq1 == eq2 && eq2 == ch,
                "{name} k={k}: sum {eq1} formula {eq2} charts {ch}"
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} (fan, k) pairs agree exactly"))
}

fn ac7_vanishing() -> Check {
    let mut zeros = 0;
    for (name, fan) in test_fans() {
        let m = model(fan);
        for k in 0..=m.dim() {
            let s_k: BTreeSet<LatticeVector> = m
                .stratification()
                .s_k(k)
                .unwrap()
                .into_iter()
                .map(|pc| pc.point.clone())
                .collect();
            for w in m.bounding_box().inflated(2).points() {
                if s_k.contains(&w) {
                    continue;
                }
                let d = weight_space_dim_by_charts(m.atlas(), &w, k).map_err(|e| e.to_string())?;
                ensure!(
                    d == 0,
                    "{name} k={k}: weight {w} outside S_k has chart dim {d}"
                );
                zeros += 1;
            }
        }
    }
    Ok(format!("{zeros} weights outside S_k vanish"))
}

fn ac8_holomorphicity() -> Check {
    let mut generators = 0;
    let mut mutations = 0;
    for (name, fan) in test_fans() {
        let m = model(fan);
        for k in 0..=m.dim() {
            for w in decomposition(m.fan(), m.stratification(), k).map_err(|e| e.to_string())? {
                let pc = m.stratification().class_of(&w.weight).unwrap();
                for g in &w.generators {
                    generators += 1;
                    for chart in m.atlas().charts() {
                        ensure!(
                            is_holomorphic_on_chart(&w.weight, g, chart),
                            "{name} k={k}: {g} at {} has a pole on chart {}",
                            w.weight,
                            chart.cone
                        );
                    }
                    // push each tight pairing from -1 to -2
                    for &t in &pc.active {
                        let (chart, slot) = m
                            .atlas()
                            .charts()
                            .iter()
                            .find_map(|c| {
                                m.fan().max_cones()[c.cone]
                                    .iter()
                                    .position(|&r| r == t)
                                    .map(|s| (c, s))
                            })
                            .unwrap();
                        let moved = &w.weight + &outward_shift(chart, slot);
                        ensure!(moved.dot(m.fan().ray(t)) == -2, "shift is not outward");
                        let fails = m
                            .atlas()
                            .charts()
                            .iter()
                            .any(|c| !is_holomorphic_on_chart(&moved, g, c));
                        ensure!(
                            fails,
                            "{name} k={k}: {g} still holomorphic at mutated weight {moved}"
                        );
                        mutations += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{generators} generators holomorphic on every chart, {mutations} mutations all fail"
    ))
}

fn ac9_structure() -> Check {
    for (name, fan) in test_fans() {
        let m = model(fan);
        let n = m.dim();
        let strat = m.stratification();
        let s0 = strat.s_k(0).unwrap();
        ensure!(
            s0.len() == 1 && s0[0].point.is_zero(),
            "{name}: S_0 = {s0:?}"
        );

        let mut prev: BTreeSet<LatticeVector> = BTreeSet::new();
        for k in 0..=n {
            let cur: BTreeSet<LatticeVector> = strat
                .s_k(k)
                .unwrap()
                .iter()
                .map(|pc| pc.point.clone())
                .collect();
            ensure!(
                prev.is_subset(&cur),
                "{name}: S_{} not inside S_{k}",
                k.saturating_sub(1)
            );
            let layer: BTreeSet<LatticeVector> =
                strat.stratum(k).iter().map(|pc| pc.point.clone()).collect();
            let joined: BTreeSet<LatticeVector> = prev.union(&layer).cloned().collect();
            ensure!(joined == cur, "{name}: S_{k} != S_{{k-1}} ∪ S({k})");
            // S_k ⊆ ∩_σ S_k(σ)
            for p in &cur {
                for chart in m.atlas().charts() {
                    ensure!(
                        chart.admits(p, k),
                        "{name}: {p} in S_{k} but not in S_{k}(σ{})",
                        chart.cone
                    );
                    let dual_coords = chart.exponents(p);
                    ensure!(
                        chart.tight_slots(p).len()
                            == dual_coords.iter().filter(|&&c| c == -1).count(),
                        "tight count"
                    );
                }
            }
            prev = cur;
        }
        ensure!(prev.len() == m.points().len(), "{name}: S_n != S");

        for pc in strat.iter() {
            for k in 0..=n {
                let d = kernel_dim_of_wedge_maps(n, k, &pc.active_rays(m.fan())).unwrap();
                let want = if pc.rank <= k {
                    pascal(n - pc.rank, k - pc.rank)
                } else {
                    0
                };
                ensure!(
                    d == want,
                    "{name}: kernel dim {d} at {} k={k}, want {want}",
                    pc.point
                );
            }
        }
    }

    // random active sets
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..300 {
        let n = rng.gen_range(1..=4);
        let count = rng.gen_range(0..=5);
        let vs: Vec<LatticeVector> = (0..count)
            .map(|_| LatticeVector::new((0..n).map(|_| rng.gen_range(-2..=2)).collect()))
            .collect();
        let r = rank_of_rows(n, &vs).unwrap();
        for k in 0..=n {
            let d = kernel_dim_of_wedge_maps(n, k, &vs).unwrap();
            let want = if r <= k { pascal(n - r, k - r) } else { 0 };
            ensure!(
                d == want,
                "n={n} k={k} rank {r}: kernel dim {d}, want {want}"
            );
        }
    }
    Ok("S_0 = {0}, nesting, chart containment, kernel law on 300 random sets".into())
}

fn ac10_unimodular_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut transforms = 0;
    for (name, fan) in test_fans() {
        let base = model(fan.clone()).dimension_table().totals();
        for _ in 0..20 {
            let u = random_unimodular(&mut rng, fan.dim(), 2 * fan.dim());
            let moved = fan.transformed(&u).map_err(|e| e.to_string())?;
            let m = ToricModel::new(moved).map_err(|e| format!("{name}: {e}"))?;
            let t = m.dimension_table().totals();
            ensure!(t == base, "{name}: {t:?} != {base:?} under {u:?}");
            transforms += 1;
        }
    }
    Ok(format!(
        "{transforms} transforms leave every table unchanged"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1 projective line", ac1_projective_line),
        ("AC2 projective plane", ac2_projective_plane),
        ("AC3 projective 3-space", ac3_projective_three_space),
        ("AC4 Hirzebruch surfaces", ac4_hirzebruch),
        ("AC5 product of two lines", ac5_product_of_lines),
        ("AC6 decomposition identity", ac6_identity_suite),
        ("AC7 vanishing outside S_k", ac7_vanishing),
        ("AC8 holomorphicity", ac8_holomorphicity),
        ("AC9 structural properties", ac9_structure),
        ("AC10 unimodular invariance", ac10_unimodular_invariance),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
