use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::laurent::{is_laurent, LaurentPolynomial, RationalFunction};
use crate::error::{Error, Result};

/// A seed `(x, B)`: cluster variables over the initial cluster plus a
/// skew-symmetric exchange matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterSeed {
    vars: Vec<RationalFunction>,
    b: Vec<Vec<i64>>,
}

impl ClusterSeed {
    /// The initial seed `x1, ..., xn` with exchange matrix `b`.
    pub fn initial(b: Vec<Vec<i64>>) -> Result<Self> {
        let n = b.len();
        let vars = (0..n)
            .map(|i| RationalFunction::from(LaurentPolynomial::var(n, i)))
            .collect();
        ClusterSeed::new(vars, b)
    }

    pub fn new(vars: Vec<RationalFunction>, b: Vec<Vec<i64>>) -> Result<Self> {
        let n = b.len();
        if n == 0 {
            return Err(Error::InvalidArgument("rank must be positive".into()));
        }
        if vars.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: vars.len(),
            });
        }
        for row in &b {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if b[i][j].checked_neg() != Some(b[j][i]) {
                    return Err(Error::NotSkewSymmetric);
                }
            }
        }
        if vars.iter().any(|v| v.numerator().is_zero()) {
            return Err(Error::InvalidArgument("cluster variables must be nonzero".into()));
        }
        Ok(ClusterSeed { vars, b })
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    pub fn variables(&self) -> &[RationalFunction] {
        &self.vars
    }

    pub fn exchange_matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    // Sorted variable strings and B under a simultaneous relabelling; the
    // minimum over all relabellings identifies a seed up to permutation.
    fn canonical_key(&self) -> (Vec<String>, Vec<Vec<i64>>) {
        let n = self.rank();
        let names: Vec<String> = self.vars.iter().map(|v| v.to_string()).collect();
        let mut best: Option<(Vec<String>, Vec<Vec<i64>>)> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let key = (
                perm.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
                perm.iter()
                    .map(|&i| perm.iter().map(|&j| self.b[i][j]).collect())
                    .collect::<Vec<_>>(),
            );
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best.expect("at least one permutation")
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl fmt::Display for ClusterSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self.vars.iter().map(|v| v.to_string()).collect();
        write!(f, "x = ({}), B = {:?}", vars.join(", "), self.b)
    }
}

fn overflow() -> Error {
    Error::InvalidArgument("exchange matrix entry overflows i64".into())
}

/// Mutation in direction `k` (1-based).
///
/// ```
/// use qmark::cluster::{mutate, ClusterSeed};
///
/// let seed = ClusterSeed::initial(vec![vec![0, 1], vec![-1, 0]]).unwrap();
/// let s = mutate(&seed, 1).unwrap();
/// assert_eq!(s.variables()[0].to_string(), "x1^-1 + x1^-1*x2");
/// assert_eq!(s.exchange_matrix(), &[vec![0, -1], vec![1, 0]]);
/// assert_eq!(mutate(&s, 1).unwrap(), seed);
/// ```
pub fn mutate(seed: &ClusterSeed, k: usize) -> Result<ClusterSeed> {
    let n = seed.rank();
    if k == 0 || k > n {
        return Err(Error::InvalidDirection { direction: k, rank: n });
    }
    let k = k - 1;
    let b = &seed.b;
    let nvars = seed.vars[0].numerator().nvars();
    let one = RationalFunction::from(LaurentPolynomial::one(nvars));

    let mut plus = one.clone();
    let mut minus = one;
    for i in 0..n {
        let e = b[i][k];
        let pow = u32::try_from(e.unsigned_abs()).map_err(|_| overflow())?;
        if e > 0 {
            plus = plus.mul(&seed.vars[i].pow(pow));
        } else if e < 0 {
            minus = minus.mul(&seed.vars[i].pow(pow));
        }
    }
    let new_var = plus.add(&minus).mul(&seed.vars[k].recip());

    let mut nb = b.clone();
    for i in 0..n {
        for j in 0..n {
            nb[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                let t1 = b[i][k].checked_abs().and_then(|a| a.checked_mul(b[k][j]));
                let t2 = b[k][j].checked_abs().and_then(|a| b[i][k].checked_mul(a));
                let sum = t1.zip(t2).and_then(|(x, y)| x.checked_add(y)).ok_or_else(overflow)?;
                b[i][j].checked_add(sum / 2).ok_or_else(overflow)?
            };
        }
    }
    let mut vars = seed.vars.clone();
    vars[k] = new_var;
    Ok(ClusterSeed { vars, b: nb })
}

/// Applies mutations in the order given (1-based directions).
pub fn mutate_path(seed: &ClusterSeed, path: &[usize]) -> Result<ClusterSeed> {
    path.iter().try_fold(seed.clone(), |s, &k| mutate(&s, k))
}

/// Cluster variables reached by breadth-first mutation.
#[derive(Clone, Debug)]
pub struct MutationOrbit {
    /// Deduplicated variables in Laurent form, sorted.
    pub variables: Vec<LaurentPolynomial>,
    /// Variables whose denominators did not reduce to a monomial.
    pub non_laurent: Vec<RationalFunction>,
    /// Seeds visited, counted up to permutation.
    pub seeds: usize,
    /// Set when the seed budget stopped the search early.
    pub truncated: bool,
    /// Every Laurent coefficient seen was positive.
    pub positive: bool,
}

impl MutationOrbit {
    pub fn all_laurent(&self) -> bool {
        self.non_laurent.is_empty()
    }
}

/// All cluster variables within `depth` mutations of `seed`, visiting at most
/// `budget` seeds.
pub fn mutation_orbit(seed: &ClusterSeed, depth: usize, budget: usize) -> Result<MutationOrbit> {
    let n = seed.rank();
    let mut seen: HashSet<(Vec<String>, Vec<Vec<i64>>)> = HashSet::new();
    let mut vars: BTreeSet<LaurentPolynomial> = BTreeSet::new();
    let mut odd: Vec<RationalFunction> = Vec::new();
    let mut truncated = false;

    let mut record = |s: &ClusterSeed, vars: &mut BTreeSet<LaurentPolynomial>| {
        for v in &s.vars {
            match is_laurent(v) {
                Some(p) => {
                    vars.insert(p);
                }
                None => {
                    if !odd.contains(v) {
                        odd.push(v.clone());
                    }
                }
            }
        }
    };

    seen.insert(seed.canonical_key());
    record(seed, &mut vars);
    // (seed, depth, last direction)
    let mut queue: VecDeque<(ClusterSeed, usize, usize)> = VecDeque::new();
    queue.push_back((seed.clone(), 0, usize::MAX));
    'bfs: while let Some((s, d, last)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for k in 1..=n {
            if k == last {
                continue;
            }
            let t = mutate(&s, k)?;
            if !seen.insert(t.canonical_key()) {
                continue;
            }
            if seen.len() > budget {
                truncated = true;
                break 'bfs;
            }
            record(&t, &mut vars);
            queue.push_back((t, d + 1, k));
        }
    }

    let positive = vars.iter().all(LaurentPolynomial::has_positive_coefficients);
    Ok(MutationOrbit {
        variables: vars.into_iter().collect(),
        non_laurent: odd,
        seeds: seen.len().min(budget),
        truncated,
        positive,
    })
}

/// The exchange binomial `prod x_i^[b_ik]+ + prod x_i^[-b_ik]+` in the
/// initial variables, for an initial seed.
pub fn exchange_binomial(b: &[Vec<i64>], k: usize) -> LaurentPolynomial {
    let n = b.len();
    let mut plus = vec![0; n];
    let mut minus = vec![0; n];
    for i in 0..n {
        plus[i] = b[i][k].max(0);
        minus[i] = (-b[i][k]).max(0);
    }
    LaurentPolynomial::monomial(plus, BigInt::one()).add(&LaurentPolynomial::monomial(minus, BigInt::one()))
}
