//! Self-check report behind `openpart verify`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use openpart::counting::{
    hirschhorn_rhs, illegal_pairings_sum, lemma1_lhs, lemma1_rhs, minuend_pairs_count,
    np_double_sum, Formula, Rational,
};
use openpart::vposet::enumerate_pairings;
use openpart::{
    build_vposet, count_open_partitions, decode, encode, enumerate_open_partitions,
    enumerate_triples,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct VerifyConfig {
    pub max_n: u64,
    pub oracle_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub cap: usize,
}

pub struct Check {
    pub name: String,
    pub failure: Option<String>,
}

pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.failure {
                None => writeln!(f, "PASS  {}", c.name)?,
                Some(why) => writeln!(f, "FAIL  {}: {why}", c.name)?,
            }
        }
        let failed = self.checks.iter().filter(|c| c.failure.is_some()).count();
        write!(
            f,
            "{} checks, {} passed, {failed} failed",
            self.checks.len(),
            self.checks.len() - failed
        )
    }
}

type Outcome = Result<(), String>;

fn check(name: String, outcome: Outcome) -> Check {
    Check {
        name,
        failure: outcome.err(),
    }
}

pub fn run(cfg: &VerifyConfig) -> Report {
    let max = cfg.max_n;
    let k = cfg.oracle_max;
    let checks = vec![
        check(
            format!("four-way formula agreement, n = 1..={max}"),
            four_way(max),
        ),
        check(
            format!("brute-force oracle, m,n <= {k}"),
            oracle(k, cfg.cap),
        ),
        check(
            format!("triple bijection and round trips, m,n <= {k}"),
            bijection(k, cfg.cap),
        ),
        check(
            format!("symmetric-sequence lemma, {} random trials", cfg.trials),
            lemma(cfg.trials, cfg.seed),
        ),
        check(
            format!("Hirschhorn identity, n = 1..={max}"),
            hirschhorn(max),
        ),
        check(
            format!("minuend minus illegal pairings, n = 1..={max}"),
            minuend(max),
        ),
        check(
            format!("pair-level decomposition, n <= {k}"),
            pairings(k, cfg.cap),
        ),
        check(format!("exact halving parity, n = 1..={max}"), parity(max)),
        check(
            format!("double sum symmetry, m,n <= {}", max.min(30)),
            symmetry(max.min(30)),
        ),
    ];
    Report { checks }
}

fn four_way(max: u64) -> Outcome {
    for n in 1..=max {
        let reference = Formula::DoubleSum.eval(n);
        for f in &Formula::ALL[1..] {
            if f.eval(n) != reference {
                return Err(format!("{f} disagrees at n = {n}"));
            }
        }
    }
    Ok(())
}

fn oracle(k: usize, cap: usize) -> Outcome {
    for m in 1..=k {
        for n in 1..=k {
            let v = build_vposet(m, n).map_err(|e| e.to_string())?;
            let brute = count_open_partitions(v.poset(), cap).map_err(|e| e.to_string())?;
            if brute != np_double_sum(m as u64, n as u64) {
                return Err(format!("({m}, {n}): brute force counts {brute}"));
            }
            if m == n {
                for f in Formula::ALL {
                    if f.eval(n as u64) != brute {
                        return Err(format!("n = {n}: {f} differs from brute force"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn bijection(k: usize, cap: usize) -> Outcome {
    for m in 1..=k {
        for n in 1..=k {
            let v = build_vposet(m, n).map_err(|e| e.to_string())?;
            let mut decoded = BTreeSet::new();
            for tr in enumerate_triples(&v) {
                let pi = decode(&v, &tr).map_err(|e| e.to_string())?;
                let back = encode(&v, &pi).map_err(|e| e.to_string())?;
                if back != tr {
                    return Err(format!("({m}, {n}): {tr:?} re-encodes as {back:?}"));
                }
                if !decoded.insert(pi) {
                    return Err(format!("({m}, {n}): duplicate decoding of {tr:?}"));
                }
            }
            let brute: BTreeSet<_> = enumerate_open_partitions(v.poset(), cap)
                .map_err(|e| e.to_string())?
                .collect();
            if brute != decoded {
                return Err(format!("({m}, {n}): decoded set differs from brute force"));
            }
        }
    }
    Ok(())
}

fn random_symmetric(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    let half: Vec<Rational> = (0..len.div_ceil(2))
        .map(|_| {
            let num: i64 = rng.gen_range(1..=1000);
            let den: i64 = rng.gen_range(1..=1000);
            Rational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect();
    (0..len).map(|i| half[i.min(len - 1 - i)].clone()).collect()
}

fn lemma(trials: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let len = rng.gen_range(1..=10);
        let a = random_symmetric(&mut rng, len);
        let b = random_symmetric(&mut rng, len);
        let lhs = lemma1_lhs(&a, &b).map_err(|e| e.to_string())?;
        let rhs = lemma1_rhs(&a, &b).map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("trial {trial}: {lhs} != {rhs}"));
        }
    }
    Ok(())
}

fn hirschhorn(max: u64) -> Outcome {
    match (1..=max).find(|&n| illegal_pairings_sum(n) != hirschhorn_rhs(n)) {
        Some(n) => Err(format!("fails at n = {n}")),
        None => Ok(()),
    }
}

fn minuend(max: u64) -> Outcome {
    let bad = (1..=max)
        .find(|&n| minuend_pairs_count(n) != np_double_sum(n, n) + illegal_pairings_sum(n));
    match bad {
        Some(n) => Err(format!("fails at n = {n}")),
        None => Ok(()),
    }
}

fn pairings(k: usize, cap: usize) -> Outcome {
    for n in 1..=k {
        let v = build_vposet(n, n).map_err(|e| e.to_string())?;
        let all: Vec<_> = enumerate_pairings(&v).collect();
        let nn = n as u64;
        if BigUint::from(all.len()) != minuend_pairs_count(nn) {
            return Err(format!("n = {n}: {} pairings", all.len()));
        }
        let illegal = all.iter().filter(|p| !p.is_legal()).count();
        if BigUint::from(illegal) != illegal_pairings_sum(nn) {
            return Err(format!("n = {n}: {illegal} illegal pairings"));
        }
        let legal: BTreeSet<_> = all
            .iter()
            .filter_map(|p| p.to_triple())
            .map(|tr| decode(&v, &tr).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        let brute: BTreeSet<_> = enumerate_open_partitions(v.poset(), cap)
            .map_err(|e| e.to_string())?
            .collect();
        if legal.len() != all.len() - illegal || legal != brute {
            return Err(format!(
                "n = {n}: legal pairings do not biject onto open partitions"
            ));
        }
    }
    Ok(())
}

fn parity(max: u64) -> Outcome {
    let two = BigUint::from(2u32);
    for n in 1..=max {
        let central = openpart::counting::binomial(2 * n - 2, n as i64 - 1) * (n - 1);
        let doubled = (BigUint::from(1u32) << (2 * (n - 1))) * (n + 1);
        if &central % &two != BigUint::default() {
            return Err(format!("(n-1) C(2n-2, n-1) is odd at n = {n}"));
        }
        if (doubled - central) % &two != BigUint::default() {
            return Err(format!("closed-form numerator is odd at n = {n}"));
        }
    }
    Ok(())
}

fn symmetry(max: u64) -> Outcome {
    for m in 1..=max {
        for n in m + 1..=max {
            if np_double_sum(m, n) != np_double_sum(n, m) {
                return Err(format!("({m}, {n})"));
            }
        }
    }
    Ok(())
}
