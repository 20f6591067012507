//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use qwalk_core::config::{build_model, ModelConfig};
use qwalk_core::equivalence::{
    bipartite_to_twostep_coined, certify, coined_square_to_bipartite, partition_to_bipartite,
    partition_to_staggered, szegedy_search_equivalence, twostep_as_two_partition,
    vertex_arc_intertwine,
};
use qwalk_core::graph::{hypergraph_incidence, staggered_graph, Hypergraph, MultiGraph};
use qwalk_core::linalg::eigen::same_multiset;
use qwalk_core::linalg::{c, cr, random_unitary, C64};
use qwalk_core::models::random::{
    random_connected_multigraph, random_connected_partition_pair, random_two_partition_walk,
};
use qwalk_core::models::{
    build_cmv, build_coined, build_hypergraph_walk, build_lattice_walk, build_staggered,
    build_szegedy, build_szegedy_search, CaseOneStyle, CoinField, CoinSpec, HamiltonianSpec,
    SearchCase, ShiftSpec, StaggeredSearch,
};
use qwalk_core::operator::{eig_unitary, is_local, StateVector};
use qwalk_core::sim::{evolve, trace_csv};
use qwalk_core::spectral::spectral_map;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn report(criterion: &str, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("acceptance {criterion}: {status} ({detail})");
    assert!(ok, "{criterion} failed: {detail}");
}

fn random_coin_blocks<R: Rng>(
    pi: &qwalk_core::graph::Partition,
    rng: &mut R,
) -> Vec<qwalk_core::linalg::CMatrix> {
    pi.classes()
        .iter()
        .map(|c| random_unitary(c.len(), rng))
        .collect()
}

fn random_coined_walk<R: Rng>(rng: &mut R) -> qwalk_core::models::CoinedWalk {
    let n = rng.gen_range(2..=6);
    let extra = rng.gen_range(0..=4);
    let g = random_connected_multigraph(n, extra, rng);
    let arcs = g.arcs();
    let keys: Vec<usize> = (0..arcs.len()).map(|a| arcs.terminus(a)).collect();
    let pi1 = qwalk_core::graph::Partition::from_keys(&keys);
    let blocks = random_coin_blocks(&pi1, rng);
    build_coined(&g, CoinSpec::Custom(blocks), ShiftSpec::FlipFlop).expect("valid walk")
}

/// Criterion 1: unitarity and locality across 200 randomized instances of
/// the five families, ground sets up to 50.
#[test]
fn criterion_1_unitarity_and_locality() {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let mut checked = 0usize;
    let mut worst_unitarity: f64 = 0.0;
    let mut all_local = true;

    for _ in 0..40 {
        let n = rng.gen_range(2..=50);
        let w = random_two_partition_walk(n, &mut rng);
        worst_unitarity = worst_unitarity.max(w.walk.unitarity_residual());
        all_local &= is_local(&w.e_op.to_sparse(), &w.pi1, 0.0);
        all_local &= is_local(&w.f_op.to_sparse(), &w.pi2, 0.0);
        checked += 1;
    }
    for _ in 0..40 {
        let n = rng.gen_range(2..=6);
        let g = random_connected_multigraph(n, rng.gen_range(0..=6), &mut rng);
        let sz = build_szegedy(&g, None, None).expect("uniform weights are stochastic");
        worst_unitarity = worst_unitarity.max(sz.walk.walk.unitarity_residual());
        all_local &= is_local(&sz.walk.e_op.to_sparse(), &sz.walk.pi1, 0.0);
        all_local &= is_local(&sz.walk.f_op.to_sparse(), &sz.walk.pi2, 0.0);
        checked += 1;
    }
    for _ in 0..40 {
        let u = random_coined_walk(&mut rng);
        worst_unitarity = worst_unitarity.max(u.walk.unitarity_residual());
        all_local &= is_local(&u.coin.to_sparse(), &u.pi1, 0.0);
        all_local &= is_local(&u.shift.to_sparse(), &u.pi2, 0.0);
        checked += 1;
    }
    for _ in 0..40 {
        let n = rng.gen_range(2..=12);
        let (pi1, pi2) = random_connected_partition_pair(n, &mut rng);
        let (_, cover) = staggered_graph(&pi1, &pi2).expect("valid cover");
        let ham = if rng.gen_bool(0.5) {
            HamiltonianSpec::Adjacency
        } else {
            HamiltonianSpec::Reflection
        };
        let w = build_staggered(
            cover,
            ham,
            rng.gen_range(0.0..std::f64::consts::PI),
            rng.gen_range(0.0..std::f64::consts::PI),
            StaggeredSearch::None,
            &[],
        )
        .expect("valid staggered walk");
        worst_unitarity = worst_unitarity.max(w.walk.unitarity_residual());
        all_local &= is_local(&w.e_op.to_sparse(), &w.cover.tess1, 0.0);
        all_local &= is_local(&w.f_op.to_sparse(), &w.cover.tess2, 0.0);
        checked += 1;
    }
    for _ in 0..40 {
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(1..=5);
        let hyperedges: Vec<Vec<usize>> = (0..m)
            .map(|_| {
                let size = rng.gen_range(1..=n.min(4));
                let mut verts: Vec<usize> = (0..n).collect();
                for i in (1..verts.len()).rev() {
                    let j = rng.gen_range(0..=i);
                    verts.swap(i, j);
                }
                verts.truncate(size);
                verts
            })
            .collect();
        let h = Hypergraph::with_indices(n, hyperedges).expect("nonempty hyperedges");
        let inc = hypergraph_incidence(&h);
        let vb = random_coin_blocks(&inc.by_vertex, &mut rng);
        let eb = random_coin_blocks(&inc.by_hyperedge, &mut rng);
        let w = build_hypergraph_walk(&h, vb, eb).expect("valid hypergraph walk");
        worst_unitarity = worst_unitarity.max(w.walk.unitarity_residual());
        all_local &= is_local(&w.e_op.to_sparse(), &w.pi1, 0.0);
        all_local &= is_local(&w.f_op.to_sparse(), &w.pi2, 0.0);
        checked += 1;
    }

    report(
        "criterion 1 (unitarity & locality)",
        checked == 200 && worst_unitarity <= 1e-10 && all_local,
        &format!("{checked} instances, worst unitarity residual {worst_unitarity:.3e}"),
    );
}

/// Criterion 2: the conversion diagram certifies on 50 random two-partition
/// walks, including the composite round trips.
#[test]
fn criterion_2_conversion_diagram() {
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    let mut worst_direct: f64 = 0.0;
    let mut worst_composite: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.gen_range(2..=20);
        let w = random_two_partition_walk(n, &mut rng);

        let (stag, to_vertices, cert_s) = partition_to_staggered(&w).expect("P to S");
        let (bip, to_edges, cert_b) = partition_to_bipartite(&w).expect("P to B");
        let (coined, to_x_arcs, cert_c2) = bipartite_to_twostep_coined(&bip).expect("B to C2");
        let (bip2, dup_pairing, cert_dup) = coined_square_to_bipartite(&coined).expect("C2 to B");
        worst_direct = worst_direct
            .max(cert_s.residual)
            .max(cert_b.residual)
            .max(cert_c2.residual)
            .max(cert_dup.residual);

        // composite 1: elements -> edges -> X arcs against the squared walk
        let composite = to_edges.compose(&to_x_arcs).expect("compatible bases");
        let squared = coined.squared().expect("unitary square");
        let round1 = certify(&w.walk, &squared, &composite, 1e-9).expect("certifiable");
        // composite 2: the duplicated-graph walk restricted through the
        // edge-to-arc pairing matches the intersection-graph walk
        let back = to_x_arcs
            .compose(&dup_pairing.inverse().expect("bijective"))
            .expect("compatible");
        let round2 = certify(&bip.walk.walk, &bip2.walk.walk, &back, 1e-9).expect("certifiable");
        // pairwise: the staggered and bipartite conjugates agree through the
        // vertex-to-element and element-to-edge maps
        let stag_to_bip = to_vertices
            .inverse()
            .expect("bijective")
            .compose(&to_edges)
            .expect("compatible");
        let round3 = certify(&stag.walk, &bip.walk.walk, &stag_to_bip, 1e-9).expect("certifiable");
        worst_composite = worst_composite
            .max(round1.residual)
            .max(round2.residual)
            .max(round3.residual);
    }
    report(
        "criterion 2 (conversion diagram)",
        worst_direct <= 1e-10 && worst_composite <= 1e-9,
        &format!("worst direct residual {worst_direct:.3e}, worst composite {worst_composite:.3e}"),
    );
}

/// Criterion 3: the two-step factorization reproduces the squared walk
/// entrywise on 30 random coined walks.
#[test]
fn criterion_3_two_step_factorization() {
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    let mut worst: f64 = 0.0;
    for _ in 0..30 {
        let u = random_coined_walk(&mut rng);
        let tp = twostep_as_two_partition(&u).expect("flip-flop walk");
        let sq = u.squared().expect("unitary square");
        worst = worst.max(tp.walk.matrix.max_abs_diff(&sq.matrix));
    }
    report(
        "criterion 3 (two-step factorization)",
        worst <= 1e-14,
        &format!("worst entrywise deviation {worst:.3e}"),
    );
}

/// Criterion 4: search equivalence between the sink-based walk and the
/// Case-I coined search on the three-vertex multigraph with a parallel
/// pair, the triangle, and the complete graph on four vertices.
#[test]
fn criterion_4_search_equivalence() {
    let mut worst: f64 = 0.0;
    let fig = MultiGraph::with_indices(3, vec![(0, 1), (1, 2), (1, 2), (0, 2)]).unwrap();
    let cases: Vec<(MultiGraph, Vec<usize>)> = vec![
        (fig, vec![2]),
        (MultiGraph::cycle(3), vec![1]),
        (MultiGraph::complete(4), vec![0]),
    ];
    for (g, marked) in cases {
        let (cert, _, _) = szegedy_search_equivalence(&g, None, &marked, CaseOneStyle::FlipMarked)
            .expect("search equivalence");
        worst = worst.max(cert.residual);
    }
    report(
        "criterion 4 (search equivalence)",
        worst <= 1e-10,
        &format!("worst residual {worst:.3e}"),
    );
}

/// Criterion 5: every sink edge is an exact fixed point on 20 randomized
/// marked instances.
#[test]
fn criterion_5_sink_fixed_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(1005);
    let mut worst: f64 = 0.0;
    let mut instances = 0usize;
    while instances < 20 {
        let n = rng.gen_range(3..=7);
        let g = random_connected_multigraph(n, rng.gen_range(0..=5), &mut rng);
        let marked_count = rng.gen_range(1..n);
        let mut marked: Vec<usize> = (0..n).collect();
        for i in (1..marked.len()).rev() {
            let j = rng.gen_range(0..=i);
            marked.swap(i, j);
        }
        marked.truncate(marked_count);
        let sz = build_szegedy_search(&g, None, None, &marked).expect("valid search walk");
        assert!(!sz.sink_edges.is_empty());
        worst = worst.max(sz.sink_fixed_point_residual());
        instances += 1;
    }
    report(
        "criterion 5 (sink fixed points)",
        worst <= 1e-14,
        &format!("worst fixed-point residual {worst:.3e}"),
    );
}

/// Criterion 6: spectral map on the 4-cycle, the triangle and random graphs
/// with Grover and Case-I coins.
#[test]
fn criterion_6_spectral_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(1006);
    let mut ok = true;
    let mut detail = String::new();

    fn check(
        u: &qwalk_core::models::CoinedWalk,
        name: &str,
        ok: &mut bool,
        detail: &mut String,
    ) -> qwalk_core::spectral::SpectralMapResult {
        let map = spectral_map(u).expect("spectral map");
        let bound_ok = map.t_eigenvalues.iter().all(|v| v.abs() <= 1.0 + 1e-10);
        let dims_ok =
            map.dims.inherited + map.dims.birth_plus + map.dims.birth_minus == map.dims.total;
        let dense = eig_unitary(&u.walk).expect("dense spectrum").eigenvalues;
        let multiset_ok = same_multiset(&map.eigenvalue_multiset(), &dense, 1e-9);
        if !(bound_ok && dims_ok && multiset_ok) {
            *ok = false;
            *detail = format!("{name}: bound {bound_ok}, dims {dims_ok}, multiset {multiset_ok}");
        }
        map
    }

    // 4-cycle with the Grover coin: discriminant eigenvalues {1, 0, 0, -1},
    // walk spectrum contains {±1, ±i(x2)}
    let c4 = build_coined(&MultiGraph::cycle(4), CoinSpec::Grover, ShiftSpec::FlipFlop).unwrap();
    let map = check(&c4, "C4 Grover", &mut ok, &mut detail);
    let want_t = [-1.0, 0.0, 0.0, 1.0];
    let t_ok = map
        .t_eigenvalues
        .iter()
        .zip(&want_t)
        .all(|(got, want)| (got - want).abs() <= 1e-10);
    let evs = map.eigenvalue_multiset();
    let count = |target: C64| evs.iter().filter(|l| (**l - target).norm() < 1e-9).count();
    let u_ok = count(cr(1.0)) >= 1
        && count(cr(-1.0)) >= 1
        && count(c(0.0, 1.0)) >= 2
        && count(c(0.0, -1.0)) >= 2;
    if !(t_ok && u_ok) {
        ok = false;
        detail = format!("C4 pinned values: T {t_ok}, U {u_ok}");
    }

    let k3 = build_coined(
        &MultiGraph::complete(3),
        CoinSpec::Grover,
        ShiftSpec::FlipFlop,
    )
    .unwrap();
    check(&k3, "K3 Grover", &mut ok, &mut detail);

    for i in 0..6 {
        let n = rng.gen_range(3..=6);
        let g = random_connected_multigraph(n, rng.gen_range(0..=8), &mut rng);
        if g.arcs().len() > 64 {
            continue;
        }
        let grover = build_coined(&g, CoinSpec::Grover, ShiftSpec::FlipFlop).unwrap();
        check(&grover, &format!("random {i} Grover"), &mut ok, &mut detail);
        let marked = vec![rng.gen_range(0..n)];
        let search = build_coined(
            &g,
            CoinSpec::Search {
                case: SearchCase::One,
                marked,
                style: CaseOneStyle::FlipMarked,
            },
            ShiftSpec::FlipFlop,
        )
        .unwrap();
        check(&search, &format!("random {i} Case-I"), &mut ok, &mut detail);
    }

    report(
        "criterion 6 (spectral map)",
        ok,
        if detail.is_empty() {
            "T bound, multiset equality and dimension accounting on all instances"
        } else {
            &detail
        },
    );
}

/// Criterion 7: vertex-based and arc-based torus walks intertwine on rings
/// of length 4 and 6 and on the 3x3 torus.
#[test]
fn criterion_7_vertex_arc_intertwining() {
    let mut rng = ChaCha8Rng::seed_from_u64(1007);
    let mut worst: f64 = 0.0;
    for dims in [vec![4usize], vec![6], vec![3, 3]] {
        for coins in [
            CoinField::Grover,
            CoinField::PerSite({
                let sites: usize = dims.iter().product();
                let comp = 2 * dims.len();
                (0..sites).map(|_| random_unitary(comp, &mut rng)).collect()
            }),
        ] {
            let lw = build_lattice_walk(&dims, coins).expect("valid lattice");
            let (_, _, cert) = vertex_arc_intertwine(&lw).expect("intertwine");
            worst = worst.max(cert.residual);
        }
    }
    report(
        "criterion 7 (vertex/arc intertwining)",
        worst <= 1e-12,
        &format!("worst residual {worst:.3e}"),
    );
}

/// Criterion 8: CMV chains — zero parameters give an exact permutation,
/// random parameters a banded unitary of bandwidth at most 2.
#[test]
fn criterion_8_cmv() {
    let mut rng = ChaCha8Rng::seed_from_u64(1008);
    let zero = build_cmv(&vec![cr(0.0); 9]).expect("valid parameters");
    let perm_ok = zero.cmv.is_exact_permutation();

    let mut band_ok = true;
    let mut unitary_ok = true;
    for _ in 0..10 {
        let m = rng.gen_range(1..=12);
        let gammas: Vec<C64> = (0..m)
            .map(|_| {
                // uniform in the unit disk
                loop {
                    let re = rng.gen_range(-1.0..1.0);
                    let im = rng.gen_range(-1.0..1.0);
                    if re * re + im * im <= 1.0 {
                        return c(re, im);
                    }
                }
            })
            .collect();
        let cmv = build_cmv(&gammas).expect("valid parameters");
        band_ok &= cmv.cmv.bandwidth() <= 2;
        unitary_ok &= cmv.cmv.unitarity_residual() <= 1e-10;
    }
    report(
        "criterion 8 (CMV)",
        perm_ok && band_ok && unitary_ok,
        &format!("permutation {perm_ok}, bandwidth {band_ok}, unitarity {unitary_ok}"),
    );
}

/// Criterion 9: probability conservation over 1000 steps on every family,
/// and byte-identical traces under a fixed seed.
#[test]
fn criterion_9_simulation() {
    let mut rng = ChaCha8Rng::seed_from_u64(1009);
    let mut conserved = true;

    let mut run_walk = |walk: &qwalk_core::operator::WalkOperator, name: &str| {
        let psi = StateVector::uniform(walk.basis.clone());
        let run = evolve(walk, &psi, 1000, None).expect(name);
        for row in &run.probabilities {
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > 1e-10 {
                conserved = false;
            }
        }
    };

    let w = random_two_partition_walk(10, &mut rng);
    run_walk(&w.walk, "two-partition");
    let g = MultiGraph::cycle(5);
    let sz = build_szegedy(&g, None, None).unwrap();
    run_walk(&sz.walk.walk, "szegedy");
    let coined = build_coined(&g, CoinSpec::Grover, ShiftSpec::FlipFlop).unwrap();
    run_walk(&coined.walk, "coined");
    let (pi1, pi2) = random_connected_partition_pair(8, &mut rng);
    let (_, cover) = staggered_graph(&pi1, &pi2).unwrap();
    let stag = build_staggered(
        cover,
        HamiltonianSpec::Adjacency,
        0.9,
        1.3,
        StaggeredSearch::None,
        &[],
    )
    .unwrap();
    run_walk(&stag.walk, "staggered");
    let h = Hypergraph::with_indices(4, vec![vec![0, 1, 2], vec![2, 3], vec![0, 3]]).unwrap();
    let inc = hypergraph_incidence(&h);
    let hyper = build_hypergraph_walk(
        &h,
        random_coin_blocks(&inc.by_vertex, &mut rng),
        random_coin_blocks(&inc.by_hyperedge, &mut rng),
    )
    .unwrap();
    run_walk(&hyper.walk, "hypergraph");
    let lattice = build_lattice_walk(&[3, 3], CoinField::Grover).unwrap();
    run_walk(&lattice.walk, "lattice");

    // determinism: identical configs and seeds give byte-identical traces
    let cfg = ModelConfig {
        family: "coined".into(),
        graph: Some(serde_json::json!({
            "vertices": [0, 1, 2, 3],
            "edges": [[0, 1], [1, 2], [2, 3], [3, 0]],
        })),
        coin: Some("random".into()),
        ..Default::default()
    };
    let seed = 424242;
    let trace_a = {
        let m = build_model(&cfg, seed).unwrap();
        let run = evolve(&m.walk, &m.initial, 50, m.classes.as_ref()).unwrap();
        trace_csv(&run)
    };
    let trace_b = {
        let m = build_model(&cfg, seed).unwrap();
        let run = evolve(&m.walk, &m.initial, 50, m.classes.as_ref()).unwrap();
        trace_csv(&run)
    };
    let deterministic = trace_a == trace_b;

    report(
        "criterion 9 (simulation)",
        conserved && deterministic,
        &format!("conservation {conserved}, byte-identical reruns {deterministic}"),
    );
}
