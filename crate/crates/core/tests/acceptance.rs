//! One pass/fail line per acceptance criterion. Expected values come from
//! the brute-force oracles in `common`, never from the library under test.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{bound, prime_power, witness_is_valid, Oracle};
use zclass_core::catalog::{default_catalog, run_catalog, RunOptions};
use zclass_core::constructions::{abelian, frattini_subgroup};
use zclass_core::isoclinism::{are_isoclinic, verify_witness};
use zclass_core::theorems::{verify_bounds, verify_theorem_a, verify_theorem_mt, Verdict};
use zclass_core::zclass::{
    conjugate_type_vector, has_abelian_subgroup_of_index_p, index_p_subgroups, is_type_n_1,
    kulkarni_size_check, max_zclass_bound, SizeCheck,
};
use zclass_core::{z_class_count, z_class_partition, ElementId, GroupTable, SubgroupSet, Validation};

const QUOTIENT_CAP: usize = 256;

struct Entry {
    spec: &'static str,
    g: GroupTable,
    oracle: Oracle,
    classes: Vec<Vec<usize>>,
}

impl Entry {
    fn count(&self) -> usize {
        self.classes.len()
    }

    /// `(p, k)` with `[G:Z] = p^k`, from the oracle's center.
    fn central_index(&self) -> Option<(u64, u32)> {
        prime_power((self.oracle.n / self.oracle.center().len()) as u64)
    }

    fn prime(&self) -> Option<u64> {
        prime_power(self.oracle.n as u64).map(|(p, _)| p)
    }

    fn nonabelian(&self) -> bool {
        self.oracle.center().len() < self.oracle.n
    }

    fn attains(&self) -> bool {
        self.central_index().is_some_and(|(p, k)| bound(p, k) == self.count() as u64)
    }
}

fn set(h: &SubgroupSet) -> BTreeSet<usize> {
    h.iter().map(ElementId::index).collect()
}

fn e(x: usize) -> ElementId {
    ElementId(x as u32)
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn find<'a>(entries: &'a [Entry], spec: &str) -> &'a Entry {
    entries.iter().find(|e| e.spec == spec).expect("catalog entry")
}

fn criterion_1(entries: &[Entry]) -> Outcome {
    let expected = [
        ("dihedral(8)", 4),
        ("quaternion(8)", 4),
        ("heisenberg(3)", 5),
        ("modular_p3(3)", 5),
        ("heisenberg(5)", 7),
        ("extraspecial(p=2,n=2,variant=plus)", 16),
        ("extraspecial(p=2,n=2,variant=minus)", 16),
        ("extraspecial(p=3,n=2,variant=plus)", 41),
    ];
    for (spec, count) in expected {
        let entry = find(entries, spec);
        ensure(entry.count() == count, || format!("{spec}: oracle counts {} z-classes, frozen {count}", entry.count()))?;
        let (p, k) = entry.central_index().ok_or_else(|| format!("{spec}: [G:Z] not a prime power"))?;
        ensure(bound(p, k) == count as u64, || format!("{spec}: bound {} != {count}", bound(p, k)))?;
        let computed = z_class_count(&entry.g);
        ensure(computed == count, || format!("{spec}: library counts {computed}"))?;
        let lib_bound = max_zclass_bound(&entry.g).map_err(|e| format!("{spec}: {e}"))?;
        ensure(lib_bound == count as u64, || format!("{spec}: library bound {lib_bound}"))?;
    }
    for entry in default_catalog() {
        let spec = entry.spec.to_string();
        let oracle = find(entries, &spec);
        let want = &entry.expect;
        ensure(want.order == Some(oracle.oracle.n), || format!("{spec}: golden order"))?;
        ensure(want.zclasses == Some(oracle.count()), || format!("{spec}: golden zclasses"))?;
        ensure(want.ctv.as_deref() == Some(&oracle.oracle.class_size_vector()[..]), || format!("{spec}: golden ctv"))?;
        ensure(want.attains == Some(oracle.attains()), || format!("{spec}: golden attains"))?;
    }
    let start = Instant::now();
    let run = run_catalog(&default_catalog(), &RunOptions::default());
    let elapsed = start.elapsed();
    let s = &run.summary;
    ensure(s.refuted == 0 && s.mismatches == 0 && s.errors == 0, || format!("catalog summary {s:?}"))?;
    ensure(elapsed < Duration::from_secs(60), || format!("catalog run took {elapsed:?}"))?;
    Ok(format!(
        "counts 4,4,5,5,7,16,16,41 equal the bound; golden catalog matches the oracle; full catalog in {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_2(entries: &[Entry]) -> Outcome {
    let mut elements = 0;
    let mut nontrivial_index = 0;
    for entry in entries {
        let predicted = entry.oracle.kulkarni_predictions();
        let mut class_size = vec![0; entry.oracle.n];
        for class in &entry.classes {
            for &x in class {
                class_size[x] = class.len();
            }
        }
        for x in 0..entry.oracle.n {
            let check = kulkarni_size_check(&entry.g, e(x));
            let want = SizeCheck {
                predicted: predicted[x],
                actual: class_size[x],
            };
            ensure(check == want, || format!("{} x={x}: library {check:?}, oracle {want:?}", entry.spec))?;
            ensure(want.holds(), || format!("{} x={x}: formula fails {want:?}", entry.spec))?;
            let cx = entry.oracle.centralizer(x);
            if entry.oracle.normalizer(&cx).len() < entry.oracle.n {
                nontrivial_index += 1;
            }
            elements += 1;
        }
    }
    let d16 = find(entries, "dihedral(16)");
    let d16_index = (0..d16.oracle.n)
        .filter(|&x| d16.oracle.normalizer(&d16.oracle.centralizer(x)).len() < d16.oracle.n)
        .count();
    ensure(d16_index > 0, || "dihedral(16) has no non-normal centralizer".into())?;
    Ok(format!(
        "{elements} elements, zero exceptions ({nontrivial_index} with [G:N(C(x))] > 1, {d16_index} in dihedral(16))"
    ))
}

/// `Z(C(x)) = ⟨x, Z⟩` for every non-central `x`.
fn oracle_cond2(o: &Oracle) -> bool {
    let z = o.center();
    (0..o.n).filter(|x| !z.contains(x)).all(|x| {
        let c = o.centralizer(x);
        let zc: BTreeSet<usize> = c.iter().copied().filter(|&a| c.iter().all(|&b| o.mul(a, b) == o.mul(b, a))).collect();
        let gens: Vec<usize> = std::iter::once(x).chain(z.iter().copied()).collect();
        zc == o.generated(&gens)
    })
}

fn criterion_3(entries: &[Entry]) -> Outcome {
    let (mut attaining, mut other, mut type_n1) = (0, 0, 0);
    for entry in entries {
        let report = verify_theorem_mt(&entry.g);
        ensure(report.verdict != Verdict::Refuted, || format!("{}: REFUTED {:?}", entry.spec, report.witness))?;
        let ctv = entry.oracle.class_size_vector();
        let is_type = entry.nonabelian() && ctv.len() == 2 && ctv[1] == 1;
        if is_type {
            type_n1 += 1;
            let p = ctv[0] as usize;
            let conditions = entry.oracle.central_quotient_elementary(p) && oracle_cond2(&entry.oracle);
            ensure(entry.attains() == conditions, || format!("{}: oracle disagrees with the biconditional", entry.spec))?;
            ensure(report.verdict == Verdict::Confirmed, || format!("{}: type (n,1) but {}", entry.spec, report.verdict))?;
            if entry.attains() {
                attaining += 1;
            }
        } else {
            ensure(report.verdict == Verdict::Vacuous, || format!("{}: not type (n,1) but {}", entry.spec, report.verdict))?;
            other += 1;
        }
    }
    ensure(attaining > 0 && other > 0, || "catalog misses a branch".into())?;
    Ok(format!("{type_n1} type-(n,1) groups confirmed ({attaining} attaining), {other} vacuous, none refuted"))
}

fn criterion_4(entries: &[Entry]) -> Outcome {
    let (mut large, mut small) = (Vec::new(), Vec::new());
    for entry in entries.iter().filter(|e| e.attains()) {
        let (p, k) = entry.central_index().expect("attainers have prime-power index");
        let report = verify_theorem_a(&entry.g);
        ensure(report.verdict == Verdict::Confirmed, || format!("{}: theorem A {}", entry.spec, report.verdict))?;
        ensure(entry.oracle.central_quotient_elementary(p as usize), || format!("{}: G/Z not elementary", entry.spec))?;
        if k > 2 {
            let abelian_maximal = entry
                .oracle
                .index_p_kernels(p as usize)
                .into_iter()
                .find(|m| entry.oracle.is_abelian_set(m));
            ensure(abelian_maximal.is_none(), || format!("{}: oracle finds an abelian index-p subgroup", entry.spec))?;
            let found = has_abelian_subgroup_of_index_p(&entry.g, p).map_err(|e| e.to_string())?;
            ensure(found.is_none(), || format!("{}: library finds an abelian index-p subgroup", entry.spec))?;
            large.push(entry.spec);
        } else {
            ensure(
                entry.oracle.n / entry.oracle.center().len() == (p * p) as usize,
                || format!("{}: |G/Z| != p^2", entry.spec),
            )?;
            small.push(entry.spec);
        }
    }
    for spec in ["dihedral(8)", "quaternion(8)", "heisenberg(3)"] {
        ensure(small.contains(&spec), || format!("{spec} missing from the k = 2 attainers"))?;
    }
    Ok(format!("k > 2: {}; k = 2: {} groups with G/Z elementary of order p^2", large.join(", "), small.len()))
}

fn criterion_5(entries: &[Entry]) -> Outcome {
    let mut checked = 0;
    for entry in entries.iter().filter(|e| e.nonabelian()) {
        let Some(p) = entry.prime() else { continue };
        let (q, k) = entry.central_index().expect("p-group central index");
        assert_eq!(p, q);
        let count = entry.count() as u64;
        ensure(p + 2 <= count && count <= bound(p, k), || {
            format!("{}: {} <= {count} <= {} fails", entry.spec, p + 2, bound(p, k))
        })?;
        let report = verify_bounds(&entry.g);
        ensure(report.verdict == Verdict::Confirmed, || format!("{}: bounds {}", entry.spec, report.verdict))?;
        checked += 1;
    }
    Ok(format!("{checked} non-abelian p-groups satisfy p + 2 <= zclasses <= bound"))
}

fn normalized_sizes(entry_classes: &[Vec<usize>], center: usize) -> Vec<usize> {
    let mut sizes: Vec<usize> = entry_classes.iter().map(|c| c.len() / center).collect();
    sizes.sort_unstable();
    sizes
}

fn check_isoclinic(a: &GroupTable, b: &GroupTable) -> Result<(), String> {
    let w = are_isoclinic(a, b, QUOTIENT_CAP)
        .map_err(|err| err.to_string())?
        .ok_or_else(|| format!("{} and {} not found isoclinic", a.label(), b.label()))?;
    verify_witness(a, b, &w).map_err(|err| err.to_string())?;
    let (oa, ob) = (Oracle::new(a), Oracle::new(b));
    witness_is_valid(&oa, &ob, &w.phi, &w.psi_domain, &w.psi)?;
    let inv = w.inverse();
    witness_is_valid(&ob, &oa, &inv.phi, &inv.psi_domain, &inv.psi)
}

fn criterion_6(entries: &[Entry]) -> Outcome {
    for (a, b, count) in [("dihedral(8)", "quaternion(8)", 4), ("heisenberg(3)", "modular_p3(3)", 5)] {
        let (ea, eb) = (find(entries, a), find(entries, b));
        check_isoclinic(&ea.g, &eb.g)?;
        ensure(ea.count() == count && eb.count() == count, || format!("{a}/{b}: counts {} {}", ea.count(), eb.count()))?;
    }
    for entry in entries {
        let p = entry.prime().unwrap_or(2);
        let ap = abelian(&[p], 64).expect("small abelian");
        let product = entry.g.direct_product(&ap, 4096).map_err(|e| e.to_string())?;
        let count = z_class_count(&product);
        ensure(count == entry.count(), || format!("{} x C_{p}: {count} vs {}", entry.spec, entry.count()))?;
        check_isoclinic(&entry.g, &product).map_err(|e| format!("{} x C_{p}: {e}", entry.spec))?;
        let prod_oracle = Oracle::new(&product);
        let prod_classes: Vec<Vec<usize>> = z_class_partition(&product)
            .blocks()
            .into_iter()
            .map(|b| b.into_iter().map(ElementId::index).collect())
            .collect();
        ensure(
            normalized_sizes(&entry.classes, entry.oracle.center().len())
                == normalized_sizes(&prod_classes, prod_oracle.center().len()),
            || format!("{}: normalized class sizes differ from the product", entry.spec),
        )?;
    }
    Ok(format!(
        "D8~Q8 (4), heisenberg(3)~modular_p3(3) (5), and G~G x C_p for all {} catalog groups; witnesses re-checked exhaustively",
        entries.len()
    ))
}

fn criterion_7(entries: &[Entry]) -> Outcome {
    let extraspecial = [
        "dihedral(8)",
        "quaternion(8)",
        "heisenberg(3)",
        "modular_p3(3)",
        "heisenberg(5)",
        "extraspecial(p=2,n=2,variant=plus)",
        "extraspecial(p=2,n=2,variant=minus)",
        "extraspecial(p=3,n=2,variant=plus)",
    ];
    for spec in extraspecial {
        let entry = find(entries, spec);
        let p = entry.prime().expect("p-group");
        let oracle_ctv = entry.oracle.class_size_vector();
        ensure(oracle_ctv == vec![p, 1], || format!("{spec}: oracle ctv {oracle_ctv:?}"))?;
        ensure(conjugate_type_vector(&entry.g).0 == oracle_ctv, || format!("{spec}: library ctv differs"))?;
        ensure(is_type_n_1(&entry.g) == Some(p), || format!("{spec}: is_type_n_1"))?;
    }
    let d16 = find(entries, "dihedral(16)");
    ensure(d16.oracle.class_size_vector() == vec![4, 2, 1], || "dihedral(16) oracle ctv".into())?;
    ensure(conjugate_type_vector(&d16.g).0 == vec![4, 2, 1], || "dihedral(16) library ctv".into())?;
    Ok("(p, 1) for all 8 extraspecial groups; (4, 2, 1) for dihedral(16)".into())
}

fn criterion_8(entries: &[Entry]) -> Outcome {
    let mut pairs = 0usize;
    for entry in entries {
        let partition = z_class_partition(&entry.g);
        let blocks: Vec<Vec<usize>> = partition
            .blocks()
            .into_iter()
            .map(|b| b.into_iter().map(ElementId::index).collect())
            .collect();
        ensure(blocks == entry.classes, || format!("{}: partition differs from the oracle", entry.spec))?;
        if entry.oracle.n <= 128 {
            let matrix = entry.oracle.z_equivalent_matrix();
            for (x, row) in matrix.iter().enumerate() {
                for (y, &related) in row.iter().enumerate() {
                    let same = partition.class_index(e(x)) == partition.class_index(e(y));
                    ensure(same == related, || format!("{}: pair ({x}, {y})", entry.spec))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("exact equality on all groups; {pairs} ordered pairs tested pairwise for orders <= 128"))
}

fn criterion_9(entries: &[Entry], started: Instant) -> Outcome {
    for entry in entries {
        let (g, o) = (&entry.g, &entry.oracle);
        ensure(o.is_associative(), || format!("{}: oracle finds non-associativity", entry.spec))?;
        g.validate(Validation { exhaustive: true, ..Validation::default() }).map_err(|e| format!("{}: {e}", entry.spec))?;
        let cents = o.centralizers();
        let partition = z_class_partition(g);
        for (x, cx) in cents.iter().enumerate() {
            for h in 0..o.n {
                let xg = o.conj(x, h);
                ensure(set(&g.centralizer(e(xg))) == o.conjugate_set(cx, h), || {
                    format!("{}: C(x^g) != C(x)^g at x={x} g={h}", entry.spec)
                })?;
                ensure(partition.class_index(e(x)) == partition.class_index(e(xg)), || {
                    format!("{}: conjugates in different z-classes", entry.spec)
                })?;
            }
        }
        let identity_class: BTreeSet<usize> =
            partition.class_of(ElementId::IDENTITY).members.iter().map(|x| x.index()).collect();
        ensure(identity_class == o.center(), || format!("{}: identity class is not Z(G)", entry.spec))?;
        if let Some(p) = entry.prime() {
            let powers: Vec<usize> = o.derived().into_iter().chain((0..o.n).map(|x| o.power(x, p as usize))).collect();
            let gp = o.generated(&powers);
            let phi = o.frattini(p as usize);
            ensure(phi == gp, || format!("{}: oracle Frattini != G'G^p", entry.spec))?;
            let lib = frattini_subgroup(g, p).map_err(|e| e.to_string())?;
            ensure(set(&lib) == phi, || format!("{}: library Frattini differs", entry.spec))?;
            if o.n > 1 {
                let count = index_p_subgroups(g, p).map_err(|e| e.to_string())?.len();
                ensure(count == o.index_p_kernels(p as usize).len(), || format!("{}: index-p subgroup count", entry.spec))?;
            }
        }
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("suite took {elapsed:?}"))?;
    Ok(format!(
        "axioms, centralizer equivariance, conjugation invariance, central class, Frattini on {} groups; suite so far {:.1}s",
        entries.len(),
        elapsed.as_secs_f64()
    ))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let entries: Vec<Entry> = common::catalog()
        .into_iter()
        .map(|(spec, g)| {
            let oracle = Oracle::new(&g);
            let classes = oracle.z_classes();
            Entry { spec, g, oracle, classes }
        })
        .collect();
    let criteria: [(&str, &dyn Fn() -> Outcome); 9] = [
        ("extraspecial bound attainment", &|| criterion_1(&entries)),
        ("size formula", &|| criterion_2(&entries)),
        ("type (n,1) biconditional", &|| criterion_3(&entries)),
        ("necessary conditions for attainers", &|| criterion_4(&entries)),
        ("bound sandwich", &|| criterion_5(&entries)),
        ("isoclinism invariance", &|| criterion_6(&entries)),
        ("type vector of extraspecial groups", &|| criterion_7(&entries)),
        ("oracle partition cross-check", &|| criterion_8(&entries)),
        ("property suite", &|| criterion_9(&entries, started)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
