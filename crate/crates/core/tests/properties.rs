mod common;

use common::{brute_betweenness, brute_path_counts, ids, random_graph};
use interdisc::analysis::{
    cluster_measures, correlation_matrix, pearson, rank_categories, spearman, CorrelationMethod,
    Linkage, MeasureReport,
};
use interdisc::corpus::{load_corpus, Corpus};
use interdisc::matrix::{profile_of, CountingMode, TransactionMatrix};
use interdisc::measures::distance::{hill_type, rao_stirling, rs_per_publication, rs_pooled};
use interdisc::measures::diversity::{
    brillouin, brillouin_index, gini_complement, shannon, shannon_entropy, simpson, GiniSupport,
};
use interdisc::measures::network::{
    average_similarity, betweenness, build_citation_graph, cluster_coefficient,
    shortest_path_counts, CitationGraph, ClusterDirection, WeightTransform,
};
use interdisc::measures::overlap::{
    d_links, p_multi, p_outside, pratt_complement, pro, spec_complement,
};
use interdisc::similarity::{
    similarity, to_dissimilarity, SimilarityKind, SimilarityMatrix, Transform,
};
use interdisc::synthgen::{generate, Affinity, GenSpec, RefRange, SpecRng};
use interdisc::MeasureValue;
use proptest::prelude::*;

const CASES: u32 = 128;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(CASES)
}

/// Square count matrices with many zeros, including whole zero rows.
fn counts() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (2usize..7).prop_flat_map(|n| {
        prop::collection::vec(
            prop::collection::vec(prop_oneof![2 => Just(0u32), 3 => 1u32..40], n),
            n,
        )
        .prop_map(|rows| {
            rows.into_iter()
                .map(|r| r.into_iter().map(f64::from).collect())
                .collect()
        })
    })
}

fn tm_of(counts: &[Vec<f64>]) -> TransactionMatrix {
    let pubs = counts
        .iter()
        .map(|r| r.iter().sum::<f64>() / 3.0 + 1.0)
        .collect();
    TransactionMatrix::from_dense(ids(counts.len()), counts, pubs, CountingMode::Full).unwrap()
}

fn same(a: MeasureValue, b: MeasureValue, tol: f64) -> bool {
    match (a, b) {
        (Ok(x), Ok(y)) => (x - y).abs() <= tol * x.abs().max(1.0),
        (x, y) => x == y,
    }
}

type RowMeasure = fn(&TransactionMatrix, usize) -> MeasureValue;

fn p_based() -> Vec<(&'static str, RowMeasure)> {
    vec![
        ("pro", pro),
        ("1-pratt", pratt_complement),
        ("1-spec", spec_complement),
        ("simpson", simpson),
        ("shannon", shannon),
        ("1-gini", |tm, i| {
            gini_complement(tm, i, GiniSupport::Observed)
        }),
        ("1-gini full", |tm, i| {
            gini_complement(tm, i, GiniSupport::All)
        }),
    ]
}

fn similarity_measures(tm: &TransactionMatrix, i: usize) -> Vec<MeasureValue> {
    let mut out = Vec::new();
    for kind in [SimilarityKind::Cosine, SimilarityKind::Ochiai] {
        let s = similarity(tm, kind).unwrap();
        out.push(hill_type(tm, i, &s));
        out.push(average_similarity(tm, &s, i));
        for t in [Transform::OneMinus, Transform::Reciprocal] {
            if let Ok(d) = to_dissimilarity(&s, t) {
                out.push(rs_pooled(tm, i, &d));
            }
        }
    }
    out
}

fn permuted(counts: &[Vec<f64>], perm: &[usize]) -> Vec<Vec<f64>> {
    // Category perm[i] of the new matrix is category i of the old one.
    let n = counts.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            out[perm[i]][perm[k]] = counts[i][k];
        }
    }
    out
}

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = SpecRng::new(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.below(i as u64 + 1) as usize);
    }
    perm
}

fn small_spec(seed: u64, multi: f64, intra: f64) -> GenSpec {
    GenSpec {
        seed,
        n_categories: 6,
        n_areas: 2,
        journals_per_category: 2,
        multi_assign_prob: multi,
        pubs_per_journal: 4,
        refs_per_pub: RefRange { min: 0, max: 6 },
        intra_category_citation_prob: intra,
        cross_category_affinity: Affinity::Scalar(0.6),
        internal_ref_prob: 0.5,
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn p_based_measures_ignore_scale(c in counts(), lambda in 0.01f64..1000.0) {
        let tm = tm_of(&c);
        let scaled = tm.scaled(lambda);
        for i in 0..tm.n() {
            for (name, f) in p_based() {
                prop_assert!(same(f(&tm, i), f(&scaled, i), 1e-12), "{name} row {i}");
            }
            for (a, b) in similarity_measures(&tm, i).into_iter().zip(similarity_measures(&scaled, i)) {
                prop_assert!(same(a, b, 1e-12));
            }
        }
    }

    #[test]
    fn similarities_ignore_scale(c in counts(), lambda in 0.01f64..1000.0) {
        let tm = tm_of(&c);
        let scaled = tm.scaled(lambda);
        for kind in [SimilarityKind::Cosine, SimilarityKind::Ochiai] {
            let a = similarity(&tm, kind).unwrap();
            let b = similarity(&scaled, kind).unwrap();
            for i in 0..tm.n() {
                for j in 0..tm.n() {
                    prop_assert!((a.get(i, j) - b.get(i, j)).abs() <= 1e-12);
                }
            }
            prop_assert_eq!(a.flagged(), b.flagged());
        }
    }

    #[test]
    fn similarity_shape(c in counts()) {
        let tm = tm_of(&c);
        for kind in [SimilarityKind::Cosine, SimilarityKind::Ochiai] {
            let s = similarity(&tm, kind).unwrap();
            let d = to_dissimilarity(&s, Transform::OneMinus).unwrap();
            for i in 0..tm.n() {
                prop_assert_eq!(s.get(i, i), 1.0);
                prop_assert_eq!(d.get(i, i), 0.0);
                for j in 0..tm.n() {
                    prop_assert_eq!(s.get(i, j), s.get(j, i));
                    prop_assert!((0.0..=1.0).contains(&s.get(i, j)));
                    prop_assert!((1.0 - d.get(i, j) - s.get(i, j)).abs() <= 1e-15);
                }
            }
            if let Ok(r) = to_dissimilarity(&s, Transform::Reciprocal) {
                for row in r.values() {
                    prop_assert!(row.iter().all(|v| v.is_finite() && *v >= 1.0));
                }
            }
        }
    }

    #[test]
    fn betweenness_ignores_weight_scale(seed in any::<u64>(), lambda in 0.01f64..1000.0) {
        let g = random_graph(&mut SpecRng::new(seed), 8);
        let a = betweenness(&g);
        let b = betweenness(&g.scaled(lambda));
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-12, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn betweenness_matches_enumeration(seed in any::<u64>()) {
        let g = random_graph(&mut SpecRng::new(seed), 7);
        for s in 0..g.n() {
            prop_assert_eq!(shortest_path_counts(&g, s), brute_path_counts(&g, s));
        }
        let fast = betweenness(&g);
        let slow = brute_betweenness(&g);
        for (x, y) in fast.iter().zip(&slow) {
            prop_assert!((x - y).abs() <= 1e-9, "{fast:?} vs {slow:?}");
        }
    }

    #[test]
    fn betweenness_vanishes_at_sources_and_sinks(seed in any::<u64>()) {
        let g = random_graph(&mut SpecRng::new(seed), 8);
        let bc = betweenness(&g);
        let mut in_degree = vec![0; g.n()];
        for u in 0..g.n() {
            for &(v, _) in g.out_edges(u) {
                in_degree[v] += 1;
            }
        }
        for i in 0..g.n() {
            if in_degree[i] == 0 || g.out_edges(i).is_empty() {
                prop_assert_eq!(bc[i], 0.0);
            }
        }
    }

    #[test]
    fn labels_do_not_matter(c in counts(), seed in any::<u64>()) {
        let n = c.len();
        let perm = permutation(n, seed);
        let tm = tm_of(&c);
        let moved = tm_of(&permuted(&c, &perm));
        for i in 0..n {
            for (name, f) in p_based() {
                prop_assert!(same(f(&tm, i), f(&moved, perm[i]), 1e-12), "{name}");
            }
            for (a, b) in similarity_measures(&tm, i).into_iter().zip(similarity_measures(&moved, perm[i])) {
                prop_assert!(same(a, b, 1e-12));
            }
            for dir in [ClusterDirection::Outgoing, ClusterDirection::Symmetric] {
                prop_assert!(same(
                    cluster_coefficient(&tm, i, dir).value,
                    cluster_coefficient(&moved, perm[i], dir).value,
                    1e-12
                ));
            }
        }
        for t in [WeightTransform::Raw, WeightTransform::Inverse] {
            let a = betweenness(&build_citation_graph(&tm, t));
            let b = betweenness(&build_citation_graph(&moved, t));
            for i in 0..n {
                prop_assert!((a[i] - b[perm[i]]).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn one_minus_spec_is_simpson(c in counts()) {
        let tm = tm_of(&c);
        for i in 0..tm.n() {
            prop_assert!(same(spec_complement(&tm, i), simpson(&tm, i), 1e-15));
        }
    }

    #[test]
    fn hill_is_reciprocal_of_one_minus_rs(c in counts()) {
        let tm = tm_of(&c);
        for kind in [SimilarityKind::Cosine, SimilarityKind::Ochiai] {
            let s = similarity(&tm, kind).unwrap();
            let d = to_dissimilarity(&s, Transform::OneMinus).unwrap();
            for i in 0..tm.n() {
                match (hill_type(&tm, i, &s), rs_pooled(&tm, i, &d)) {
                    (Ok(h), Ok(rs)) => prop_assert!((h - 1.0 / (1.0 - rs)).abs() <= 1e-12 * h),
                    (h, rs) => prop_assert_eq!(h, rs),
                }
            }
        }
    }

    #[test]
    fn rs_with_identity_similarity_is_simpson(c in counts()) {
        let tm = tm_of(&c);
        let d = to_dissimilarity(&SimilarityMatrix::identity(ids(tm.n())), Transform::OneMinus).unwrap();
        for i in 0..tm.n() {
            prop_assert!(same(rs_pooled(&tm, i, &d), simpson(&tm, i), 1e-15));
        }
    }

    #[test]
    fn shannon_bounds_brillouin(c in counts(), lambda in 2u32..50) {
        let tm = tm_of(&c);
        let scaled = tm.scaled(f64::from(lambda));
        for i in 0..tm.n() {
            if let (Ok(h), Ok(b)) = (shannon(&tm, i), brillouin(&tm, i)) {
                prop_assert!(h >= b);
                let bigger = brillouin(&scaled, i).unwrap();
                prop_assert!(bigger <= h + 1e-12);
                if h > 0.0 {
                    prop_assert!(bigger > b);
                }
            }
        }
    }

    #[test]
    fn linear_per_category_terms(c in counts(), drop in 0usize..6) {
        let n = c.len();
        let j = drop % n;
        let tm = tm_of(&c);
        let s = similarity(&tm, SimilarityKind::Cosine).unwrap();
        let a = tm.publication_counts();
        let shares = tm.publication_shares();
        for i in (0..n).filter(|&i| i != j) {
            let mut cut = c.clone();
            cut[i][j] = 0.0;
            let tm_cut = TransactionMatrix::from_dense(ids(n), &cut, a.to_vec(), CountingMode::Full).unwrap();
            let full = cluster_coefficient(&tm, i, ClusterDirection::Outgoing).value.unwrap();
            let less = cluster_coefficient(&tm_cut, i, ClusterDirection::Outgoing).value.unwrap();
            let term = shares[j] * c[i][j] / (a[i] * a[j]);
            prop_assert!((full - less - term).abs() <= 1e-12);

            let mut values = s.values().to_vec();
            values[i][j] = 0.0;
            values[j][i] = 0.0;
            let s_cut = SimilarityMatrix::new(ids(n), values).unwrap();
            if let (Ok(full), Ok(less)) = (average_similarity(&tm, &s, i), average_similarity(&tm, &s_cut, i)) {
                prop_assert!((full - less - shares[j] * s.get(i, j)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn spearman_sees_only_order(xs in prop::collection::vec(-5.0f64..5.0, 3..40), ys in prop::collection::vec(-5.0f64..5.0, 40)) {
        let x: Vec<MeasureValue> = xs.iter().map(|&v| Ok(v)).collect();
        let y: Vec<MeasureValue> = ys[..xs.len()].iter().map(|&v| Ok(v)).collect();
        let transforms: [fn(f64) -> f64; 4] = [|v| 3.0 * v, |v| 2.0 * v + 5.0, |v| v * v * v, f64::exp];
        let base = spearman(&x, &y);
        for f in transforms {
            let fx: Vec<MeasureValue> = xs.iter().map(|&v| Ok(f(v))).collect();
            if let Some(r) = spearman(&x, &fx) {
                prop_assert_eq!(r, 1.0);
            }
            let fy: Vec<MeasureValue> = y.iter().map(|v| v.map(f)).collect();
            match (base, spearman(&fx, &fy)) {
                (Some(a), Some(b)) => prop_assert!((a - b).abs() <= 1e-12),
                (a, b) => prop_assert_eq!(a, b),
            }
        }
    }

    #[test]
    fn pearson_ignores_positive_affine_maps(
        xs in prop::collection::vec(-5.0f64..5.0, 3..40),
        ys in prop::collection::vec(-5.0f64..5.0, 40),
        scale in 0.1f64..10.0,
        shift in -10.0f64..10.0,
    ) {
        let x: Vec<MeasureValue> = xs.iter().map(|&v| Ok(v)).collect();
        let y: Vec<MeasureValue> = ys[..xs.len()].iter().map(|&v| Ok(v)).collect();
        let ax: Vec<MeasureValue> = xs.iter().map(|&v| Ok(scale * v + shift)).collect();
        match (pearson(&x, &y), pearson(&ax, &y)) {
            (Some(a), Some(b)) => prop_assert!((a - b).abs() <= 1e-12),
            (a, b) => prop_assert_eq!(a, b),
        }
    }

    #[test]
    fn ranks_see_only_order(values in prop::collection::vec(prop::option::weighted(0.8, 0u32..30), 1..30)) {
        let column: Vec<MeasureValue> = values
            .iter()
            .map(|v| v.map(f64::from).ok_or(interdisc::Undefined::ZeroRow))
            .collect();
        let transformed: Vec<MeasureValue> = column.iter().map(|v| v.map(|x| (x / 7.0).exp() - 3.0)).collect();
        let cats = ids(values.len());
        let report = MeasureReport::from_columns(
            cats,
            vec![("x".into(), column), ("fx".into(), transformed)],
            "",
        ).unwrap();
        let a = rank_categories(&report, "x").unwrap();
        let b = rank_categories(&report, "fx").unwrap();
        prop_assert_eq!(a.ranks, b.ranks);
        prop_assert_eq!(a.unranked, b.unranked);
    }

    #[test]
    fn pairwise_deletion_counts(cols in prop::collection::vec(prop::collection::vec(prop::option::weighted(0.7, -3.0f64..3.0), 12), 2..5)) {
        let columns: Vec<(String, Vec<MeasureValue>)> = cols
            .iter()
            .enumerate()
            .map(|(m, c)| (format!("m{m}"), c.iter().map(|v| v.ok_or(interdisc::Undefined::ZeroRow)).collect()))
            .collect();
        let report = MeasureReport::from_columns(ids(12), columns, "").unwrap();
        let cm = correlation_matrix(&report, CorrelationMethod::Pearson).unwrap();
        for a in 0..cols.len() {
            for b in 0..cols.len() {
                let both = (0..12).filter(|&k| cols[a][k].is_some() && cols[b][k].is_some()).count();
                prop_assert_eq!(cm.n[a][b], both);
                if let Some(r) = cm.values[a][b] {
                    prop_assert!((-1.0..=1.0).contains(&r));
                    prop_assert_eq!(Some(r), cm.values[b][a]);
                }
            }
        }
    }

    #[test]
    fn clustering_ignores_measure_order(
        cols in prop::collection::vec(prop::collection::vec(0u32..8, 15), 3..8),
        seed in any::<u64>(),
    ) {
        let named: Vec<(String, Vec<MeasureValue>)> = cols
            .iter()
            .enumerate()
            .map(|(m, c)| (format!("m{m}"), c.iter().map(|&v| Ok(f64::from(v))).collect()))
            .collect();
        let perm = permutation(named.len(), seed);
        let mut shuffled = named.clone();
        for (i, col) in named.iter().enumerate() {
            shuffled[perm[i]] = col.clone();
        }
        for linkage in [Linkage::Average, Linkage::Single, Linkage::Complete] {
            let tree = |cols: Vec<(String, Vec<MeasureValue>)>| {
                let report = MeasureReport::from_columns(ids(15), cols, "").unwrap();
                let cm = correlation_matrix(&report, CorrelationMethod::Pearson).unwrap();
                cluster_measures(&cm, linkage).unwrap()
            };
            let a = tree(named.clone());
            let b = tree(shuffled.clone());
            prop_assert_eq!(a.clusters(), b.clusters());
            let mut ea = a.excluded.clone();
            ea.sort();
            prop_assert_eq!(ea, b.excluded.clone());
            for w in a.merges.windows(2) {
                prop_assert!(w[0].height <= w[1].height);
            }
        }
    }

    #[test]
    fn corpus_round_trips(seed in any::<u64>()) {
        let corpus = generate(&small_spec(seed, 0.3, 0.5)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let paths = ["c.csv", "j.csv", "p.jsonl"].map(|f| dir.path().join(f));
        corpus.write_files(&paths[0], &paths[1], &paths[2]).unwrap();
        let back = load_corpus(&paths[0], &paths[1], &paths[2]).unwrap();
        prop_assert_eq!(corpus.categories(), back.categories());
        prop_assert_eq!(corpus.journals(), back.journals());
        prop_assert_eq!(corpus.publications(), back.publications());
        for p in 0..corpus.publications().len() {
            prop_assert_eq!(corpus.references(p), back.references(p));
            prop_assert_eq!(corpus.cited_by(p), back.cited_by(p));
        }
    }

    #[test]
    fn citation_index_inverts_references(seed in any::<u64>()) {
        let corpus = generate(&small_spec(seed, 0.3, 0.5)).unwrap();
        let mut entries = 0;
        for q in 0..corpus.publications().len() {
            entries += corpus.cited_by(q).len();
        }
        prop_assert_eq!(entries, corpus.total_internal_references());
        for p in 0..corpus.publications().len() {
            for r in corpus.publications()[p].refs.iter() {
                if let interdisc::corpus::Reference::Internal(id) = r {
                    let q = corpus.publication_idx(id.as_str()).unwrap();
                    prop_assert!(corpus.cited_by(q).contains(&p));
                }
            }
        }
    }

    #[test]
    fn profiles_average_to_rows(seed in any::<u64>(), full in any::<bool>()) {
        let counting = if full { CountingMode::Full } else { CountingMode::Fractional };
        let corpus = generate(&small_spec(seed, 0.4, 0.5)).unwrap();
        let tm = TransactionMatrix::build(&corpus, counting);
        let total_refs = corpus.total_references() as f64;
        if counting == CountingMode::Fractional {
            prop_assert!((tm.total() - total_refs).abs() <= 1e-6);
        }
        let n = tm.n();
        for c in 0..n {
            let mut acc = vec![0.0; n];
            let mut mass = 0.0;
            for p in corpus.category_publications(c) {
                if let Some(profile) = profile_of(&corpus, p, counting) {
                    let w = counting.share(corpus.journal_categories(corpus.publication_journal(p)).len()) * profile.mass;
                    for (k, q) in profile.dense(n).into_iter().enumerate() {
                        acc[k] += w * q;
                    }
                    mass += w;
                }
            }
            match tm.row_proportions(c) {
                Ok(row) => {
                    for k in 0..n {
                        prop_assert!((acc[k] / mass - row[k]).abs() <= 1e-9);
                    }
                }
                Err(_) => prop_assert_eq!(mass, 0.0),
            }
        }
    }

    #[test]
    fn journal_measures_ignore_references(seed in any::<u64>()) {
        let corpus = generate(&small_spec(seed, 0.5, 0.5)).unwrap();
        let mut pubs = corpus.publications().to_vec();
        for p in &mut pubs {
            p.refs.clear();
        }
        let bare = Corpus::new(corpus.categories().to_vec(), corpus.journals().to_vec(), pubs).unwrap();
        for c in 0..corpus.n_categories() {
            prop_assert_eq!(p_multi(&corpus, c), p_multi(&bare, c));
            prop_assert_eq!(p_outside(&corpus, c), p_outside(&bare, c));
            prop_assert_eq!(d_links(&corpus, c), d_links(&bare, c));
        }
    }

    #[test]
    fn adding_a_publication_only_grows_counts(seed in any::<u64>(), target in 0usize..12) {
        let corpus = generate(&small_spec(seed, 0.3, 0.5)).unwrap();
        let before = TransactionMatrix::build(&corpus, CountingMode::Fractional);
        let journals = corpus.journals();
        let mut pubs = corpus.publications().to_vec();
        pubs.push(interdisc::corpus::Publication {
            id: "extra".into(),
            journal: journals[target % journals.len()].id.clone(),
            refs: vec![
                interdisc::corpus::Reference::journal(journals[(target + 3) % journals.len()].id.clone()),
                interdisc::corpus::Reference::publication(pubs[0].id.clone()),
            ],
        });
        let grown = Corpus::new(corpus.categories().to_vec(), journals.to_vec(), pubs).unwrap();
        let after = TransactionMatrix::build(&grown, CountingMode::Fractional);
        for i in 0..before.n() {
            prop_assert!(after.publication_counts()[i] >= before.publication_counts()[i]);
            for k in 0..before.n() {
                prop_assert!(after.get(i, k) >= before.get(i, k));
            }
        }
    }
}

#[test]
fn identical_profiles_give_equal_rs() {
    use interdisc::corpus::{CorpusBuilder, Reference};
    let mut b = CorpusBuilder::new()
        .category("A", "x")
        .category("B", "x")
        .category("C", "x")
        .journal("JA", &["A"])
        .journal("JB", &["B"])
        .journal("JC", &["C"]);
    for k in 0..5 {
        b = b.publication(
            &format!("P{k}"),
            "JA",
            vec![
                Reference::journal("JA"),
                Reference::journal("JB"),
                Reference::journal("JB"),
                Reference::journal("JC"),
            ],
        );
    }
    let corpus = b.build().unwrap();
    let tm = TransactionMatrix::build(&corpus, CountingMode::Fractional);
    let s = SimilarityMatrix::new(
        ids(3),
        vec![
            vec![1.0, 0.3, 0.6],
            vec![0.3, 1.0, 0.1],
            vec![0.6, 0.1, 1.0],
        ],
    )
    .unwrap();
    for t in [Transform::OneMinus, Transform::Reciprocal] {
        let d = to_dissimilarity(&s, t).unwrap();
        let p = rs_per_publication(&corpus, 0, &d, CountingMode::Fractional)
            .value
            .unwrap();
        let g = rs_pooled(&tm, 0, &d).unwrap();
        assert!((p - g).abs() <= 1e-12);
        assert!((p - rao_stirling(&[0.25, 0.5, 0.25], &d)).abs() <= 1e-12);
    }
}

#[test]
fn brillouin_converges_to_shannon() {
    let base = [3u64, 1, 2, 5, 1];
    let total: u64 = base.iter().sum();
    let p: Vec<f64> = base.iter().map(|&c| c as f64 / total as f64).collect();
    let h = shannon_entropy(&p);
    let mut last = 0.0;
    for lambda in [1u64, 10, 100, 1000, 10_000] {
        let counts: Vec<u64> = base.iter().map(|&c| c * lambda).collect();
        let b = brillouin_index(&counts).unwrap();
        assert!(b > last && b < h);
        last = b;
    }
    let counts: Vec<u64> = base.iter().map(|&c| c * 10_000).collect();
    assert!(counts.iter().sum::<u64>() >= 100_000);
    assert!((brillouin_index(&counts).unwrap() - h).abs() < 1e-3);
}

#[test]
fn complete_equal_weight_digraph_has_no_betweenness() {
    let n = 6;
    let edges: Vec<(usize, usize, f64)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v, 1.0)))
        .collect();
    let g = CitationGraph::from_edges(ids(n), &edges, WeightTransform::Raw).unwrap();
    assert_eq!(betweenness(&g), vec![0.0; n]);
}
