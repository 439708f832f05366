//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_UNATTAINABLE` print FAIL with the measured data
//! but do not make the process exit nonzero; every other failure does.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::Rng;
use trace_invariants::eval::{
    diagram_check, independence_certificate, is_relation, isolation_check, psi_n,
    CertificateOptions,
};
use trace_invariants::io::{format_expr, parse_sigma};
use trace_invariants::matrix::mat_product;
use trace_invariants::quiver::{
    bilinear_forms_quiver, quiver_generators, quiver_independence, quiver_invariance_check,
    restricted_group_sample, upsilon_factor,
};
use trace_invariants::random::{random_sigma_poly, stream_rng, CorpusSpec, STREAM_SIGMA_CORPUS};
use trace_invariants::sigma::{p_multilinearize, ReductionPipeline};
use trace_invariants::words::{
    all_words, commuting_root, palindrome_decompose, x_alphabet, SubwordMode,
};
use trace_invariants::{
    Field, GenericKind, GroupKind, GroupSpec, PolyMatrix, Polynomial, SigmaPoly, Variable, Word,
};

const KNOWN_UNATTAINABLE: &[u32] = &[3];

const Q: Field = Field::Rationals;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn tr_matrix(m: &PolyMatrix) -> Polynomial {
    m.trace().expect("square")
}

/// The two worked derivation examples on the symbolic and the matrix side.
fn criterion_1() -> Outcome {
    // σ_2(X_1): ∂_q f = -tr(Y_1q X_1) + tr(X_1) tr(Y_1q)
    for field in [Q, Field::Prime(3), Field::Prime(2)] {
        let f = parse_sigma("sigma(2, x1)", field).map_err(err)?;
        for q in 1..=3u32 {
            let got = f.derive(q).map_err(err)?;
            let expected =
                parse_sigma(&format!("-tr(y1_{q}*x1) + tr(x1)*tr(y1_{q})"), field).map_err(err)?;
            check(got == expected, || {
                format!("∂_{q} σ_2(x1) over {field}: {got}")
            })?;
            for n in [2usize, 3] {
                let g = GroupSpec::gl(n);
                let x = PolyMatrix::generic(field, GenericKind::X, 1, None, n).map_err(err)?;
                let y = PolyMatrix::generic(field, GenericKind::Y, 1, Some(q), n).map_err(err)?;
                let direct =
                    &(&tr_matrix(&x) * &tr_matrix(&y)) - &tr_matrix(&y.mul(&x).map_err(err)?);
                let via_matrix = x.sigma_t(2).map_err(err)?.derivation(q);
                let via_symbol = psi_n(&got, g).map_err(err)?;
                check(direct == via_matrix && via_matrix == via_symbol, || {
                    format!("σ_2 example at n={n}, q={q} over {field}")
                })?;
            }
        }
    }

    // p = 2: f = tr(X_1)^2 tr(X_1 X_2)
    let f2 = Field::Prime(2);
    let f = parse_sigma("tr(x1)*tr(x1)*tr(x1*x2)", f2).map_err(err)?;
    let d1 = f.derive(1).map_err(err)?;
    let d1_expected =
        parse_sigma("tr(x1)*tr(x1)*tr(y1_1*x2) + tr(x1)*tr(x1)*tr(x1*y2_1)", f2).map_err(err)?;
    check(d1 == d1_expected, || format!("∂_1 f = {d1}"))?;
    let d21 = d1.derive(2).map_err(err)?;
    let d21_expected = parse_sigma(
        "tr(x1)*tr(x1)*tr(y1_1*y2_2) + tr(x1)*tr(x1)*tr(y1_2*y2_1)",
        f2,
    )
    .map_err(err)?;
    check(d21 == d21_expected, || format!("∂_2∂_1 f = {d21}"))?;
    let d11 = d1.derive_formal(1).map_err(err)?;
    check(d11.is_zero(), || format!("∂_1∂_1 f = {d11}"))?;
    for n in [2usize, 3] {
        let g = GroupSpec::gl(n);
        let pf = psi_n(&f, g).map_err(err)?;
        check(psi_n(&d1, g).map_err(err)? == pf.derivation(1), || {
            format!("Ψ_{n} ∂_1")
        })?;
        check(
            psi_n(&d21, g).map_err(err)? == pf.derivation(1).derivation(2),
            || format!("Ψ_{n} ∂_2∂_1"),
        )?;
        check(pf.derivation(1).derivation(1).is_zero(), || {
            format!("Ψ_{n}: ∂_1∂_1 nonzero on the matrix side")
        })?;
    }
    Ok("σ_2 example for q ≤ 3 over Q, F_3, F_2; characteristic-2 example; n ∈ {2, 3}".into())
}

/// Derivation commutes with evaluation on a seeded random corpus.
fn criterion_2() -> Outcome {
    let mut checked = 0usize;
    let mut elements = 0usize;
    for (idx, field) in [Field::Prime(3), Field::Prime(5), Q]
        .into_iter()
        .enumerate()
    {
        let mut rng = stream_rng(20 + idx as u64, STREAM_SIGMA_CORPUS);
        for round in 0..120 {
            let d = 1 + (round % 3) as u32;
            let transposes = round % 2 == 1;
            let mut spec = CorpusSpec::new(field, d, 4);
            spec.transposes = transposes;
            let f = random_sigma_poly(&mut rng, &spec);
            elements += 1;
            let mut groups = vec![GroupSpec::o(1), GroupSpec::o(2), GroupSpec::o(3)];
            groups.push(GroupSpec::sp(2).map_err(err)?);
            if !transposes {
                groups.extend([GroupSpec::gl(1), GroupSpec::gl(2), GroupSpec::gl(3)]);
            }
            for g in groups {
                checked += 1;
                if !diagram_check(&f, 1, g).map_err(err)? {
                    return Err(format!("mismatch for {f} at {g} over {field}"));
                }
            }
        }
    }
    Ok(format!(
        "{elements} elements, {checked} (f, group, n) checks, 0 mismatches"
    ))
}

fn certify(field: Field, g: GroupSpec, d: u32, deg: usize) -> Result<(usize, usize), String> {
    let r =
        independence_certificate(field, d, deg, g, CertificateOptions::default()).map_err(err)?;
    Ok((r.rank, r.basis_size))
}

/// Independence certificate for O(D) and Sp(4), with Sp(2D) as supplement.
fn criterion_3() -> Outcome {
    let fields = [Q, Field::Prime(3), Field::Prime(5)];
    let mut sp_deficits = Vec::new();
    let mut o_lines = Vec::new();
    for field in fields {
        for deg in 1..=4usize {
            let (rank, size) = certify(field, GroupSpec::o(deg), 2, deg)?;
            if rank != size {
                return Err(format!(
                    "O({deg}) over {field}, D={deg}: rank {rank} of {size}"
                ));
            }
            o_lines.push(size);
            let (rank, size) = certify(field, GroupSpec::sp(4).map_err(err)?, 2, deg)?;
            if rank != size {
                sp_deficits.push(format!("{field} D={deg}: {rank}/{size}"));
            }
            let (rank2, size2) = certify(field, GroupSpec::sp(2 * deg).map_err(err)?, 2, deg)?;
            if rank2 != size2 {
                return Err(format!(
                    "Sp({}) over {field}, D={deg}: rank {rank2} of {size2}",
                    2 * deg
                ));
            }
        }
    }
    if sp_deficits.is_empty() {
        Ok("O(n=D) and Sp(4) full rank for D ≤ 4 over Q, F_3, F_5".into())
    } else {
        Err(format!(
            "O(n=D) full rank for D ≤ 4 over Q, F_3, F_5; Sp(4) rank-deficient [{}] \
             (non-free relations at n = 4); supplementary Sp(n=2D) full rank for D ≤ 4",
            sp_deficits.join(", ")
        ))
    }
}

fn criterion_4() -> Outcome {
    for field in [Q, Field::Prime(2), Field::Prime(3), Field::Prime(5)] {
        for deg in 1..=4usize {
            let (rank, size) = certify(field, GroupSpec::gl(deg), 2, deg)?;
            if rank != size {
                return Err(format!("GL({deg}) over {field}: rank {rank} of {size}"));
            }
        }
    }
    Ok("GL(n=D) full rank for D ≤ 4 over Q, F_2, F_3, F_5".into())
}

fn criterion_5() -> Outcome {
    let f2 = Field::Prime(2);
    let tr = parse_sigma("tr(x1*T(x1))", f2).map_err(err)?;
    let s2 = parse_sigma("sigma(2, x1*T(x1))", f2).map_err(err)?;
    for n in [2usize, 4] {
        let g = GroupSpec::sp(n).map_err(err)?;
        check(is_relation(&tr, g).map_err(err)?, || {
            format!("tr(x1 x1ᵀ) nonzero at Sp({n})")
        })?;
    }
    check(
        !is_relation(&s2, GroupSpec::sp(2).map_err(err)?).map_err(err)?,
        || "σ_2(x1 x1ᵀ) vanishes at Sp(2)".into(),
    )?;
    // matrix-side oracle: tr(A A*) for a generic A, computed without Ψ
    for n in [2usize, 4] {
        let a = PolyMatrix::generic(f2, GenericKind::X, 1, None, n).map_err(err)?;
        let prod = a
            .mul(&a.symplectic_transpose().map_err(err)?)
            .map_err(err)?;
        check(tr_matrix(&prod).is_zero(), || {
            format!("tr(A A*) nonzero at n={n}")
        })?;
    }
    Ok("tr(x1 x1ᵀ) relation at Sp(2), Sp(4); σ_2(x1 x1ᵀ) not a relation at Sp(2)".into())
}

fn random_sparse_matrix(rng: &mut impl Rng, field: Field, n: usize, tag: u32) -> PolyMatrix {
    let p = field.characteristic() as i64;
    PolyMatrix::from_fn(field, n, n, |i, j| match rng.random_range(0..5) {
        0..=1 => Polynomial::zero(field),
        2 => Polynomial::from_i64(field, rng.random_range(1..p.max(2))),
        3 => {
            let c = Polynomial::from_i64(field, rng.random_range(1..p.max(2)));
            &c * &Polynomial::var(field, Variable::x(tag, i as u32 + 1, j as u32 + 1))
        }
        _ => {
            let v = Polynomial::var(field, Variable::x(tag, i as u32 + 1, j as u32 + 1));
            let w = Polynomial::var(field, Variable::x(tag + 1, rng.random_range(1..=2), 1));
            &v + &w
        }
    })
}

/// Frobenius twist identities on random polynomial matrices.
fn criterion_6() -> Outcome {
    let mut rng = stream_rng(6, 3);
    let mut count = 0;
    for p in [2u64, 3, 5] {
        let field = Field::Prime(p);
        for k in 0..50 {
            let n = 1 + k % 4;
            let a = random_sparse_matrix(&mut rng, field, n, 1);
            let b = random_sparse_matrix(&mut rng, field, n, 3);
            let tw = |m: &PolyMatrix| m.entrywise_p_power(p).expect("char p");
            let ab = a.mul(&b).map_err(err)?;
            check(tw(&ab) == tw(&a).mul(&tw(&b)).map_err(err)?, || {
                format!("(AB)^(p) at p={p}, n={n}")
            })?;
            let ap = tw(&a);
            for t in 1..=n {
                check(
                    a.sigma_t(t).map_err(err)?.pow(p as u32) == ap.sigma_t(t).map_err(err)?,
                    || format!("σ_{t}(A)^p at p={p}, n={n}"),
                )?;
            }
            if n % 2 == 0 {
                let star = |m: &PolyMatrix| m.symplectic_transpose().expect("even");
                check(tw(&star(&a)) == star(&ap), || {
                    format!("(A*)^(p) at p={p}, n={n}")
                })?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} random matrices, n ≤ 4, p ∈ {{2, 3, 5}}"))
}

/// `|i|_m` in `1..=m`.
fn residue(i: i64, m: usize) -> usize {
    ((i - 1).rem_euclid(m as i64) + 1) as usize
}

/// Independent reading of the subword definitions.
fn subword_oracle(a: &Word, b: &Word, l: usize, transposed: bool) -> bool {
    let (av, bv) = (a.letters(), b.letters());
    let s = bv.len();
    (1..=av.len()).all(|i| {
        if transposed {
            av[i - 1] == bv[residue(l as i64 - i as i64 + 1, s) - 1].t()
        } else {
            av[i - 1] == bv[residue((l + i - 1) as i64, s) - 1]
        }
    })
}

fn rotations(w: &Word) -> Vec<Word> {
    (0..w.len())
        .map(|i| {
            let mut v = w.letters().to_vec();
            v.rotate_left(i);
            Word::new(v).expect("nonempty")
        })
        .collect()
}

fn cyc_equiv(a: &Word, b: &Word) -> bool {
    a.len() == b.len() && rotations(a).contains(b)
}

/// Word combinatorics, exhaustive over length ≤ 6 on x1, x2 and transposes.
fn criterion_7() -> Outcome {
    let alphabet = x_alphabet(2, true);
    let by_len: Vec<Vec<Word>> = (0..=6)
        .map(|len| {
            if len == 0 {
                Vec::new()
            } else {
                all_words(&alphabet, len)
            }
        })
        .collect();
    let mut checks = 0usize;
    let sub = |a: &Word, b: &Word, l: usize, t: bool| {
        let mode = if t {
            SubwordMode::Transposed
        } else {
            SubwordMode::Plain
        };
        let lib = a.is_subword_of(b, l, mode);
        assert_eq!(lib, subword_oracle(a, b, l, t), "{a} vs {b}, l={l}, T={t}");
        lib
    };
    for words in &by_len[1..] {
        for b in words {
            let r = b.len();
            // subword remark: every a ∼ b is an l- or l^T-subword of b
            let mut orbit = rotations(b);
            orbit.extend(rotations(&b.involution()));
            for a in &orbit {
                checks += 1;
                check(
                    (1..=r).any(|l| sub(a, b, l, false) || sub(a, b, l, true)),
                    || format!("remark fails for {a} ∼ {b}"),
                )?;
            }
            // palindromes
            let pal = palindrome_decompose(b);
            checks += 1;
            if *b == b.involution() {
                let c = pal.ok_or_else(|| format!("no decomposition of {b}"))?;
                check(c.concat(&c.involution()) == *b, || {
                    format!("{c} c^T != {b}")
                })?;
            } else {
                check(pal.is_none(), || format!("decomposed non-palindrome {b}"))?;
            }
            if !b.is_primitive() {
                continue;
            }
            // subword lemma for primitive a = b
            let a = b;
            let sym = cyc_equiv(a, &a.involution());
            for l in 1..=r {
                checks += 1;
                check(sub(a, a, l, false) == (l == 1), || {
                    format!("part a: {a}, l={l}")
                })?;
                if !sym {
                    check(!sub(a, a, l, true), || format!("part b: {a}, l={l}"))?;
                }
                if *a == a.involution() {
                    check(sub(a, a, l, true) == (l == r), || {
                        format!("part d: {a}, l={l}")
                    })?;
                }
            }
            let has_palindrome_rotation = rotations(a).iter().any(|w| *w == w.involution());
            checks += 1;
            check(sym == has_palindrome_rotation, || format!("part c: {a}"))?;
        }
    }
    // commuting roots over all pairs with total length ≤ 6
    for lb in 1..=5 {
        for lc in 1..=(6 - lb) {
            for b in &by_len[lb] {
                for c in &by_len[lc] {
                    checks += 1;
                    let commute = b.concat(c) == c.concat(b);
                    match commuting_root(b, c) {
                        Some((e, i, j)) => {
                            check(commute && e.pow(i) == *b && e.pow(j) == *c, || {
                                format!("bad root {e} for {b}, {c}")
                            })?
                        }
                        None => check(!commute, || format!("missed root for {b}, {c}"))?,
                    }
                }
            }
        }
    }
    Ok(format!("{checks} checks over all words of length ≤ 6"))
}

fn criterion_8() -> Outcome {
    let mut total = 0;
    for kind in [GroupKind::GL, GroupKind::O, GroupKind::Sp] {
        for d in 1..=4u32 {
            let r = isolation_check(d, kind).map_err(err)?;
            if !r.ok() {
                return Err(format!(
                    "{kind} d={d}: {} failures, first {:?}",
                    r.failures.len(),
                    r.failures[0]
                ));
            }
            total += r.monomials;
        }
    }
    Ok(format!(
        "{total} multilinear basis elements isolated (GL, O, Sp; d ≤ 4)"
    ))
}

/// Reduction pipeline on a random corpus with the Ψ_3 bridge.
fn criterion_9() -> Outcome {
    let mut runs = 0;
    let mut bridges = 0;
    for (idx, p) in [3u64, 5].into_iter().enumerate() {
        let field = Field::Prime(p);
        let mut rng = stream_rng(90 + idx as u64, STREAM_SIGMA_CORPUS);
        for round in 0..30 {
            let mut spec = CorpusSpec::new(field, 1 + (round % 3) as u32, 5);
            spec.transposes = round % 2 == 0;
            let mut f = random_sigma_poly(&mut rng, &spec);
            if round % 3 != 0 {
                // a p-th power factor so that the strip stage has work to do
                let mut small = spec.clone();
                small.max_degree = 2;
                small.max_terms = 2;
                let h = random_sigma_poly(&mut rng, &small);
                f = &f * &h.pow(p as u32);
            }
            let m = p_multilinearize(&f, false).map_err(|e| format!("{f}: {e}"))?;
            check(
                !m.poly.is_zero() && m.poly.is_p_multilinear(p).is_some(),
                || format!("p_multilinearize({f}) not p-multilinear"),
            )?;
            check(m.deg_minus_trace.windows(2).all(|w| w[1] < w[0]), || {
                format!(
                    "deg⁻ not strictly decreasing for {f}: {:?}",
                    m.deg_minus_trace
                )
            })?;
            let run = ReductionPipeline::run(&f, None, false).map_err(|e| format!("{f}: {e}"))?;
            let result = run.result();
            check(
                !result.is_zero() && result.is_multilinear() && !result.has_y_letters(),
                || format!("pipeline({f}) ended at {result}"),
            )?;
            let g = if spec.transposes {
                GroupSpec::o(3)
            } else {
                GroupSpec::gl(3)
            };
            for pair in run.stages.windows(2) {
                let (before, after) = (&pair[0], &pair[1]);
                if after.label != "strip p-th powers" {
                    continue;
                }
                check(after.deg_plus < before.deg_plus, || {
                    format!(
                        "deg⁺ did not drop: {} -> {}",
                        before.deg_plus, after.deg_plus
                    )
                })?;
                let witness = after.witness.clone().unwrap_or_default();
                let slots: BTreeSet<u32> = witness.iter().map(|b| b.base).collect();
                let psi_before = psi_n(&before.poly, g).map_err(err)?;
                let vars: BTreeSet<Variable> = psi_before
                    .variables()
                    .into_iter()
                    .filter(|v| v.slot().is_some_and(|k| slots.contains(&k)))
                    .collect();
                let contracted = psi_before.frobenius_contract(&vars, p).map_err(err)?;
                check(contracted == psi_n(&after.poly, g).map_err(err)?, || {
                    format!("Ψ_3 bridge fails at {}", before.poly)
                })?;
                bridges += 1;
            }
            runs += 1;
        }
    }
    Ok(format!(
        "{runs} elements over F_3, F_5; {bridges} strip steps bridged at n = 3"
    ))
}

fn criterion_10() -> Outcome {
    let s = bilinear_forms_quiver(1, 1, 2).map_err(err)?;
    let gens = quiver_generators(&s, 4, None).map_err(err)?;
    for field in [Field::Prime(5), Q] {
        let samples = restricted_group_sample(&s, field, 20, 10).map_err(err)?;
        for g in &gens {
            let h = upsilon_factor(g, &s, field).map_err(err)?;
            check(
                quiver_invariance_check(&h, &s, &samples).map_err(err)?,
                || format!("{g} not invariant over {field}"),
            )?;
        }
    }
    // matrix-side oracle for the forms action itself: g A g^T and g^{-T} B g^{-1}
    let f5 = Field::Prime(5);
    let samples = restricted_group_sample(&s, f5, 20, 11).map_err(err)?;
    let a = PolyMatrix::generic_rect(f5, 1, 2, 2);
    let b = PolyMatrix::generic_rect(f5, 2, 2, 2);
    for g in &samples {
        let gu = &g[0];
        let moved_a = mat_product(&[gu.clone(), a.clone(), gu.transpose()]).map_err(err)?;
        let gi = gu.constant_inverse().map_err(err)?;
        let moved_b = mat_product(&[gi.transpose(), b.clone(), gi]).map_err(err)?;
        let before = tr_matrix(&a.mul(&b).map_err(err)?);
        let after = tr_matrix(&moved_a.mul(&moved_b).map_err(err)?);
        check(before == after, || {
            "tr(AB) moved by the forms action".into()
        })?;
    }
    // degree counts arrows; (dim, degree) = (4, 4) contains the stated
    // degree ≤ 3 check and the n = D instance, (6, 6) is supplementary
    let mut sizes = Vec::new();
    for (dim, degree) in [(4, 4), (6, 6)] {
        let wide = s.with_uniform_dim(dim).map_err(err)?;
        let mut size = 0;
        for field in [Q, Field::Prime(2), Field::Prime(3), Field::Prime(5)] {
            let r = quiver_independence(&wide, field, degree).map_err(err)?;
            check(r.independent, || {
                format!(
                    "quiver monomials of degree ≤ {degree} at dim {dim} dependent over {field}: rank {} of {}",
                    r.rank, r.basis_size
                )
            })?;
            size = r.basis_size;
        }
        sizes.push(format!("degree ≤ {degree} at dim {dim} (basis {size})"));
    }
    Ok(format!(
        "{} generators invariant over F_5 and Q; independent over Q, F_2, F_3, F_5: {}",
        gens.len(),
        sizes.join(", ")
    ))
}

fn criterion_11() -> Outcome {
    let mut count = 0;
    for (idx, field) in [Q, Field::Prime(2), Field::Prime(3), Field::Prime(5)]
        .into_iter()
        .enumerate()
    {
        let mut rng = stream_rng(110 + idx as u64, STREAM_SIGMA_CORPUS);
        for k in 0..2500 {
            let mut spec = CorpusSpec::new(field, 3, 5);
            spec.max_terms = 4;
            spec.max_deriv = (k % 3) as u32;
            let f: SigmaPoly = random_sigma_poly(&mut rng, &spec);
            let text = format_expr(&f);
            let back = parse_sigma(&text, field).map_err(|e| format!("{text}: {e}"))?;
            check(back == f, || format!("round trip changed {text}"))?;
            count += 1;
        }
    }
    let argvs: [&[&str]; 4] = [
        &[
            "invariants",
            "quiver",
            "check",
            "--bilinear",
            "1,1",
            "--n",
            "2",
            "--field",
            "f5",
            "--seed",
            "42",
        ],
        &[
            "invariants",
            "invariance",
            "--group",
            "Sp",
            "--n",
            "2",
            "--field",
            "q",
            "--seed",
            "7",
            "sigma(2, x1*T(x2))",
        ],
        &[
            "invariants",
            "certify",
            "--group",
            "O",
            "--field",
            "f3",
            "--d",
            "2",
            "--deg",
            "3",
            "--n",
            "3",
        ],
        &[
            "invariants",
            "pipeline",
            "--field",
            "f5",
            "tr(x1)*tr(x1)*tr(x1)*sigma(2, x1*x2)",
        ],
    ];
    for argv in argvs {
        let first = invariants_cli::run(argv.iter().copied());
        let second = invariants_cli::run(argv.iter().copied());
        check(first == second, || {
            format!("nondeterministic output for {argv:?}")
        })?;
        check(first.code == 0, || {
            format!("{argv:?} exited {}: {}", first.code, first.stderr)
        })?;
    }
    Ok(format!(
        "{count} round trips; {} CLI invocations byte-identical",
        argvs.len()
    ))
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 11] = [
        (
            1,
            "worked derivation examples",
            Duration::from_secs(1),
            criterion_1,
        ),
        (
            2,
            "commuting diagram",
            Duration::from_secs(120),
            criterion_2,
        ),
        (
            3,
            "independence for O and Sp",
            Duration::from_secs(600),
            criterion_3,
        ),
        (
            4,
            "independence for GL",
            Duration::from_secs(600),
            criterion_4,
        ),
        (
            5,
            "characteristic-2 symplectic traces",
            Duration::from_secs(10),
            criterion_5,
        ),
        (
            6,
            "Frobenius twist identities",
            Duration::from_secs(60),
            criterion_6,
        ),
        (
            7,
            "word combinatorics",
            Duration::from_secs(120),
            criterion_7,
        ),
        (
            8,
            "multilinear isolation",
            Duration::from_secs(120),
            criterion_8,
        ),
        (
            9,
            "reduction pipeline",
            Duration::from_secs(300),
            criterion_9,
        ),
        (
            10,
            "mixed quiver invariants",
            Duration::from_secs(600),
            criterion_10,
        ),
        (
            11,
            "round trip and determinism",
            Duration::from_secs(60),
            criterion_11,
        ),
    ];
    let only: Option<u32> = std::env::args().nth(1).and_then(|a| a.parse().ok());
    let mut unexpected = 0;
    for (id, name, limit, f) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over the {}s limit", limit.as_secs())),
            Err(e) => (false, e),
        };
        let status = if ok { "PASS" } else { "FAIL" };
        let note = if !ok && KNOWN_UNATTAINABLE.contains(&id) {
            " [known unattainable]"
        } else {
            ""
        };
        println!(
            "criterion {id:>2} {status}{note} ({:.2}s) {name}: {detail}",
            elapsed.as_secs_f64()
        );
        if !ok && note.is_empty() {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
