//! Triple densities of pair colourings on finite abelian groups, computed in
//! exact rational arithmetic.
//!
//! For T inside G and A inside G x G,
//! delta_T(A) = P(t, t1 - t2 : (t, t1 - t2) in A) and
//! Lambda_T(A) = P((t1, t4-t5), (t2, t4-t5), (t3, t2-t1) all in A),
//! with t, t_i uniform on T.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{pre, Error, Result};

/// Z/n1 x ... x Z/nm, elements encoded in mixed radix with the first factor most significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub factors: Vec<u64>,
}

impl FiniteGroup {
    pub fn new(factors: &[u64]) -> Result<FiniteGroup> {
        pre(factors.iter().all(|&n| n >= 1), || "cyclic factors must be positive".into())?;
        let order: u64 = factors.iter().product();
        pre(order <= 1 << 16, || format!("group order {order} above 2^16"))?;
        Ok(FiniteGroup { factors: factors.to_vec() })
    }

    pub fn f2(r: usize) -> FiniteGroup {
        FiniteGroup { factors: vec![2; r] }
    }

    pub fn cyclic(n: u64) -> FiniteGroup {
        FiniteGroup { factors: vec![n] }
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn decode(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        for (i, &n) in self.factors.iter().enumerate().rev() {
            out[i] = idx as u64 % n;
            idx /= n as usize;
        }
        out
    }

    pub fn encode(&self, x: &[u64]) -> usize {
        self.factors.iter().zip(x).fold(0, |acc, (&n, &v)| acc * n as usize + (v % n) as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<u64> = self.factors.iter().zip(x.iter().zip(&y)).map(|(&n, (u, v))| (u + v) % n).collect();
        self.encode(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        let s: Vec<u64> = self.factors.iter().zip(self.decode(a)).map(|(&n, v)| (n - v) % n).collect();
        self.encode(&s)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Table d[a * |G| + b] = a - b.
    pub fn sub_table(&self) -> Vec<u32> {
        let n = self.order();
        let negs: Vec<usize> = (0..n).map(|b| self.neg(b)).collect();
        let mut out = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                out[a * n + b] = self.add(a, negs[b]) as u32;
            }
        }
        out
    }
}

pub fn eps_r(r: usize) -> BigRational {
    let mut fact = BigInt::one();
    for k in 2..=r {
        fact *= k;
    }
    let two = BigInt::from(2);
    let e = 7 * r as i64 - 1;
    if e >= 0 {
        BigRational::new(BigInt::one(), two.pow(e as u32) * fact.pow(3))
    } else {
        BigRational::new(two.pow((-e) as u32), fact.pow(3))
    }
}

fn ratio(num: u128, den: u128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Working context for one T inside G.
struct TSpace<'a> {
    n: usize,
    t: &'a [usize],
    sub: &'a [u32],
    /// N(u) = #{(t4, t5) in T^2 : t4 - t5 = u}
    diff_count: Vec<u64>,
}

impl<'a> TSpace<'a> {
    fn new(g: &FiniteGroup, t: &'a [usize], sub: &'a [u32]) -> TSpace<'a> {
        let n = g.order();
        let mut diff_count = vec![0u64; n];
        for &a in t {
            for &b in t {
                diff_count[sub[a * n + b] as usize] += 1;
            }
        }
        TSpace { n, t, sub, diff_count }
    }

    fn d(&self, a: usize, b: usize) -> usize {
        self.sub[a * self.n + b] as usize
    }

    fn delta<F: Fn(usize, usize) -> bool + Sync>(&self, a: &F) -> BigRational {
        let mut num: u128 = 0;
        for &t in self.t {
            for (u, &c) in self.diff_count.iter().enumerate() {
                if c > 0 && a(t, u) {
                    num += c as u128;
                }
            }
        }
        ratio(num, (self.t.len() as u128).pow(3))
    }

    fn lambda_direct<F: Fn(usize, usize) -> bool + Sync>(&self, a: &F, distinct: bool) -> u128 {
        let t = self.t;
        t.par_iter()
            .map(|&t1| {
                let mut c: u128 = 0;
                for &t2 in t {
                    let w = self.d(t2, t1);
                    for &t3 in t {
                        if !a(t3, w) {
                            continue;
                        }
                        for &t4 in t {
                            for &t5 in t {
                                let u = self.d(t4, t5);
                                if a(t1, u) && a(t2, u) {
                                    let p1 = (t1, u);
                                    let p2 = (t2, u);
                                    let p3 = (t3, w);
                                    if !distinct || (p1 != p2 && p1 != p3 && p2 != p3) {
                                        c += 1;
                                    }
                                }
                            }
                        }
                    }
                }
                c
            })
            .collect::<Vec<_>>()
            .into_iter()
            .sum()
    }

    /// sum over (t1, t2) of D_A(t2 - t1) * sum_u N(u) 1_A(t1, u) 1_A(t2, u),
    /// with D_A(w) = #{t3 in T : (t3, w) in A}.
    fn lambda_accel<F: Fn(usize, usize) -> bool + Sync>(&self, a: &F, distinct: bool) -> u128 {
        let support: Vec<usize> = (0..self.n).filter(|&u| self.diff_count[u] > 0).collect();
        let dcount: Vec<u128> = (0..self.n).map(|w| self.t.iter().filter(|&&t3| a(t3, w)).count() as u128).collect();
        let rows: Vec<Vec<bool>> = self.t.iter().map(|&t| support.iter().map(|&u| a(t, u)).collect()).collect();
        (0..self.t.len())
            .into_par_iter()
            .map(|i1| {
                let t1 = self.t[i1];
                let mut c: u128 = 0;
                for (i2, &t2) in self.t.iter().enumerate() {
                    if distinct && t1 == t2 {
                        continue;
                    }
                    let w = self.d(t2, t1);
                    if dcount[w] == 0 {
                        continue;
                    }
                    let mut m: u128 = 0;
                    for (k, &u) in support.iter().enumerate() {
                        if rows[i1][k] && rows[i2][k] {
                            m += self.diff_count[u] as u128;
                        }
                    }
                    c += dcount[w] * m;
                    if distinct && self.diff_count[w] > 0 && a(t1, w) && a(t2, w) {
                        // drop t3 = t1 and t3 = t2 when u = w
                        c -= 2 * self.diff_count[w] as u128;
                    }
                }
                c
            })
            .collect::<Vec<_>>()
            .into_iter()
            .sum()
    }
}

pub const LAMBDA_DIRECT_MAX: u128 = 1_000_000_000;
pub const LAMBDA_ACCEL_ABOVE: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaPath {
    Auto,
    Direct,
    Accelerated,
}

/// Lambda_T(A) for A given as a predicate on (t, u) in G x G. With `distinct`
/// only triples of three distinct points are counted.
pub fn lambda_t<F: Fn(usize, usize) -> bool + Sync>(
    g: &FiniteGroup,
    t: &[usize],
    a: F,
    distinct: bool,
    path: LambdaPath,
) -> Result<BigRational> {
    pre(!t.is_empty(), || "T is empty".into())?;
    let sub = g.sub_table();
    let space = TSpace::new(g, t, &sub);
    let five = (t.len() as u128).pow(5);
    let direct = match path {
        LambdaPath::Direct => true,
        LambdaPath::Accelerated => false,
        LambdaPath::Auto => five <= LAMBDA_ACCEL_ABOVE,
    };
    if direct && five > LAMBDA_DIRECT_MAX {
        return Err(Error::Budget(format!("|T|^5 = {five} above the direct-loop limit")));
    }
    let count = if direct { space.lambda_direct(&a, distinct) } else { space.lambda_accel(&a, distinct) };
    Ok(ratio(count, five))
}

pub fn delta_t<F: Fn(usize, usize) -> bool + Sync>(g: &FiniteGroup, t: &[usize], a: F) -> BigRational {
    let sub = g.sub_table();
    TSpace::new(g, t, &sub).delta(&a)
}

/// A partial colouring of T x (T - T) into colours 0..r; cells with `None`
/// form the undefined set E. Cells are indexed t * |G| + u.
#[derive(Debug, Clone, PartialEq)]
pub struct PairColoring {
    pub group: FiniteGroup,
    pub t: Vec<usize>,
    pub r: usize,
    pub cells: Vec<Option<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairColoringJson {
    pub group: Vec<u64>,
    #[serde(rename = "T")]
    pub t: Vec<Vec<u64>>,
    pub classes: Vec<Vec<[Vec<u64>; 2]>>,
}

impl PairColoring {
    pub fn new(group: FiniteGroup, mut t: Vec<usize>, r: usize, cells: Vec<Option<u32>>) -> Result<PairColoring> {
        let n = group.order();
        t.sort_unstable();
        t.dedup();
        pre(!t.is_empty() && t.iter().all(|&x| x < n), || "T must be a nonempty subset of G".into())?;
        pre(cells.len() == n * n, || format!("expected {} cells, got {}", n * n, cells.len()))?;
        pre(cells.iter().flatten().all(|&c| (c as usize) < r), || format!("colour out of range 0..{r}"))?;
        Ok(PairColoring { group, t, r, cells })
    }

    /// Colours every cell of T x (T - T) independently and uniformly.
    pub fn random<R: Rng>(group: FiniteGroup, t: Vec<usize>, r: usize, rng: &mut R) -> Result<PairColoring> {
        let n = group.order();
        let cells = (0..n * n).map(|_| Some(rng.gen_range(0..r as u32))).collect();
        PairColoring::new(group, t, r, cells)
    }

    pub fn n(&self) -> usize {
        self.group.order()
    }

    pub fn class(&self, i: usize) -> impl Fn(usize, usize) -> bool + Sync + '_ {
        let n = self.n();
        move |t, u| self.cells[t * n + u] == Some(i as u32)
    }

    pub fn undefined(&self) -> impl Fn(usize, usize) -> bool + Sync + '_ {
        let n = self.n();
        move |t, u| self.cells[t * n + u].is_none()
    }

    pub fn delta_undefined(&self) -> BigRational {
        delta_t(&self.group, &self.t, self.undefined())
    }

    pub fn lambda_class(&self, i: usize, distinct: bool) -> Result<BigRational> {
        lambda_t(&self.group, &self.t, self.class(i), distinct, LambdaPath::Auto)
    }

    fn domain(&self) -> Vec<(usize, usize)> {
        let g = &self.group;
        let mut diffs: Vec<usize> = self.t.iter().flat_map(|&a| self.t.iter().map(move |&b| g.sub(a, b))).collect();
        diffs.sort_unstable();
        diffs.dedup();
        self.t.iter().flat_map(|&t| diffs.iter().map(move |&u| (t, u))).collect()
    }

    pub fn to_json(&self) -> PairColoringJson {
        let g = &self.group;
        let n = self.n();
        let mut classes = vec![Vec::new(); self.r];
        for (t, u) in self.domain() {
            if let Some(c) = self.cells[t * n + u] {
                classes[c as usize].push([g.decode(t), g.decode(u)]);
            }
        }
        PairColoringJson { group: g.factors.clone(), t: self.t.iter().map(|&x| g.decode(x)).collect(), classes }
    }

    pub fn from_json(j: &PairColoringJson) -> Result<PairColoring> {
        let g = FiniteGroup::new(&j.group)?;
        let n = g.order();
        let check = |x: &[u64]| {
            pre(x.len() == g.factors.len() && x.iter().zip(&g.factors).all(|(v, m)| v < m), || format!("bad element {x:?}"))
        };
        for x in &j.t {
            check(x)?;
        }
        let mut cells = vec![None; n * n];
        for (c, pairs) in j.classes.iter().enumerate() {
            for [t, u] in pairs {
                check(t)?;
                check(u)?;
                let k = g.encode(t) * n + g.encode(u);
                if cells[k].is_some() {
                    return Err(Error::Invalid(format!("pair {t:?}, {u:?} listed in two classes")));
                }
                cells[k] = Some(c as u32);
            }
        }
        let t = j.t.iter().map(|x| g.encode(x)).collect();
        PairColoring::new(g, t, j.classes.len(), cells)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalReport {
    pub coloring: PairColoring,
    pub lambdas: Vec<BigRational>,
    pub partition_ok: bool,
}

/// On F_2^r with T = G: A_0 = G x {0}; for u != 0 with first nonzero
/// coordinate i, colour i if t_i = 0 and r + i if t_i = 1.
pub fn extremal_coloring(r: usize) -> Result<ExtremalReport> {
    pre((1..=10).contains(&r), || format!("r = {r} outside 1..=10"))?;
    let g = FiniteGroup::f2(r);
    let n = g.order();
    let mut cells = vec![None; n * n];
    for t in 0..n {
        let tv = g.decode(t);
        for u in 0..n {
            let uv = g.decode(u);
            cells[t * n + u] = Some(match uv.iter().position(|&b| b == 1) {
                None => 0,
                Some(i) => (if tv[i] == 0 { i + 1 } else { r + i + 1 }) as u32,
            });
        }
    }
    let coloring = PairColoring::new(g.clone(), (0..n).collect(), 2 * r + 1, cells)?;
    // the classes as written, checked to partition G x G
    let member = |c: usize, t: usize, u: usize| -> bool {
        let (tv, uv) = (g.decode(t), g.decode(u));
        if c == 0 {
            return uv.iter().all(|&b| b == 0);
        }
        let (i, ti) = if c <= r { (c - 1, 0) } else { (c - r - 1, 1) };
        uv[..i].iter().all(|&b| b == 0) && uv[i] == 1 && tv[i] == ti
    };
    let partition_ok = (0..n).all(|t| {
        (0..n).all(|u| {
            let hits: Vec<usize> = (0..=2 * r).filter(|&c| member(c, t, u)).collect();
            hits.len() == 1 && coloring.cells[t * n + u] == Some(hits[0] as u32)
        })
    });
    let lambdas = (0..=2 * r).map(|c| coloring.lambda_class(c, false)).collect::<Result<Vec<_>>>()?;
    let quarter_r = BigRational::new(BigInt::one(), BigInt::from(4).pow(r as u32));
    if !partition_ok || lambdas[0] != quarter_r || lambdas[1..].iter().any(|l| !l.is_zero()) {
        return Err(Error::BoundViolated(format!("extremal colouring assertions fail at r = {r}")));
    }
    Ok(ExtremalReport { coloring, lambdas, partition_ok })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DrcReport {
    pub x_prime: Vec<usize>,
    pub y_star: usize,
    pub alpha: BigRational,
    /// nu_X(X')
    pub measure: BigRational,
    /// nu_X^2(E cap X' x X')
    pub e_measure: BigRational,
    /// the defect functional at y*
    pub defect: BigRational,
}

/// Dependent random choice on weighted finite spaces: X' = N_X(y*) for the y*
/// maximizing nu_X(N_X(y))^2 - nu_X^2(E cap N_X(y)^2) / eta, where E is the set of
/// pairs with nu_Y(common neighbourhood) <= eta alpha^2 / 2. Both conclusions
/// nu_X(X') >= alpha/2 and nu_X^2(E cap X'^2) <= eta nu_X(X')^2 are asserted.
pub fn dependent_random_choice(wx: &[u64], wy: &[u64], a: &[Vec<bool>], eta: &BigRational) -> Result<DrcReport> {
    let (nx, ny) = (wx.len(), wy.len());
    pre(a.len() == nx && a.iter().all(|row| row.len() == ny), || "A must be |X| x |Y|".into())?;
    pre(eta.is_positive() && *eta <= BigRational::one(), || format!("eta = {eta} outside (0, 1]"))?;
    let sx: u128 = wx.iter().map(|&w| w as u128).sum();
    let sy: u128 = wy.iter().map(|&w| w as u128).sum();
    pre(sx > 0 && sy > 0, || "weights must have positive total".into())?;
    let mut amass: u128 = 0;
    for x in 0..nx {
        for y in 0..ny {
            if a[x][y] {
                amass += wx[x] as u128 * wy[y] as u128;
            }
        }
    }
    let alpha = ratio(amass, sx * sy);
    pre(alpha.is_positive(), || "A has measure zero".into())?;
    let threshold = eta * &alpha * &alpha / BigInt::from(2);
    let mut in_e = vec![false; nx * nx];
    for x1 in 0..nx {
        for x2 in 0..nx {
            let common: u128 = (0..ny).filter(|&y| a[x1][y] && a[x2][y]).map(|y| wy[y] as u128).sum();
            in_e[x1 * nx + x2] = ratio(common, sy) <= threshold;
        }
    }
    let eval = |y: usize| -> (BigRational, BigRational, BigRational) {
        let nbhd: Vec<usize> = (0..nx).filter(|&x| a[x][y]).collect();
        let m: u128 = nbhd.iter().map(|&x| wx[x] as u128).sum();
        let mut e: u128 = 0;
        for &x1 in &nbhd {
            for &x2 in &nbhd {
                if in_e[x1 * nx + x2] {
                    e += wx[x1] as u128 * wx[x2] as u128;
                }
            }
        }
        let measure = ratio(m, sx);
        let e_measure = ratio(e, sx * sx);
        let defect = &measure * &measure - &e_measure / eta;
        (measure, e_measure, defect)
    };
    let mut best: Option<(usize, (BigRational, BigRational, BigRational))> = None;
    for y in 0..ny {
        if wy[y] == 0 {
            continue;
        }
        let v = eval(y);
        if best.as_ref().map_or(true, |(_, b)| v.2 > b.2) {
            best = Some((y, v));
        }
    }
    let (y_star, (measure, e_measure, defect)) = best.expect("positive total weight on Y");
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let ok = defect >= &half * &alpha * &alpha && measure >= &half * &alpha && e_measure <= eta * &measure * &measure;
    if !ok {
        return Err(Error::BoundViolated(format!(
            "dependent random choice conclusions fail: measure {measure}, E-measure {e_measure}, alpha {alpha}"
        )));
    }
    let x_prime = (0..nx).filter(|&x| a[x][y_star]).collect();
    Ok(DrcReport { x_prime, y_star, alpha, measure, e_measure, defect })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RichMode {
    Oracle,
    Constructive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RichColor {
    pub color: usize,
    pub lambda: BigRational,
    pub bound: BigRational,
    /// sizes of the nested sets T visited by the constructive recursion
    pub trail: Vec<usize>,
}

/// A colour i with Lambda_T(c^{-1}(i)) >= eps_r^2, for a partial colouring
/// whose undefined set has delta_T(E) <= eps_r.
pub fn find_rich_color(c: &PairColoring, mode: RichMode) -> Result<RichColor> {
    let r = c.r;
    pre(r >= 1, || "no colours".into())?;
    let eps = eps_r(r);
    let de = c.delta_undefined();
    pre(de <= eps, || format!("delta_T(E) = {de} exceeds eps_{r} = {eps}"))?;
    let bound = &eps * &eps;
    let (color, lambda, trail) = match mode {
        RichMode::Oracle => {
            let mut best: Option<(usize, BigRational)> = None;
            for i in 0..r {
                let l = c.lambda_class(i, false)?;
                if best.as_ref().map_or(true, |(_, b)| l > *b) {
                    best = Some((i, l));
                }
            }
            let (i, l) = best.expect("r >= 1");
            (i, l, vec![c.t.len()])
        }
        RichMode::Constructive => {
            let colors: Vec<usize> = (0..r).collect();
            let mut trail = Vec::new();
            let i = rich_rec(c, &c.t, &colors, &mut trail)?;
            (i, c.lambda_class(i, false)?, trail)
        }
    };
    if lambda < bound {
        return Err(Error::BoundViolated(format!("colour {color} has Lambda = {lambda} below eps_{r}^2")));
    }
    Ok(RichColor { color, lambda, bound, trail })
}

/// One level of the induction on the number of colours, on the subset `t`
/// with the colours `colors` still in play (all others count as undefined).
fn rich_rec(c: &PairColoring, t: &[usize], colors: &[usize], trail: &mut Vec<usize>) -> Result<usize> {
    trail.push(t.len());
    let r = colors.len();
    let g = &c.group;
    let n = c.n();
    let sub = g.sub_table();
    let space = TSpace::new(g, t, &sub);
    // densest colour, ties to the smallest index
    let mut dense = colors[0];
    let mut dmax = space.delta(&c.class(dense));
    for &i in &colors[1..] {
        let d = space.delta(&c.class(i));
        if d > dmax {
            dense = i;
            dmax = d;
        }
    }
    if r == 1 {
        let ok = space.lambda_accel(&c.class(dense), false);
        let lam = ratio(ok, (t.len() as u128).pow(5));
        let e1 = eps_r(1);
        if lam < &e1 * &e1 {
            return Err(Error::BoundViolated(format!("single colour on |T| = {} has Lambda {lam}", t.len())));
        }
        return Ok(dense);
    }
    let eps_prev = eps_r(r - 1);
    let eta = &eps_prev / BigInt::from(4);
    // X = T uniform, Y = support of N with weights N(u)
    let ys: Vec<usize> = (0..n).filter(|&u| space.diff_count[u] > 0).collect();
    let wy: Vec<u64> = ys.iter().map(|&u| space.diff_count[u]).collect();
    let wx = vec![1u64; t.len()];
    let cls = c.class(dense);
    let a: Vec<Vec<bool>> = t.iter().map(|&x| ys.iter().map(|&u| cls(x, u)).collect()).collect();
    let drc = dependent_random_choice(&wx, &wy, &a, &eta)?;
    let t_prime: Vec<usize> = drc.x_prime.iter().map(|&k| t[k]).collect();
    let sub_space = TSpace::new(g, &t_prime, &sub);
    let d_prime = sub_space.delta(&cls);
    let half_prev = &eps_prev / BigInt::from(2);
    if d_prime >= half_prev {
        return Ok(dense);
    }
    let rest: Vec<usize> = colors.iter().copied().filter(|&i| i != dense).collect();
    let undefined = |x: usize, u: usize| match c.cells[x * n + u] {
        None => true,
        Some(k) => !rest.contains(&(k as usize)),
    };
    let de = sub_space.delta(&undefined);
    if de > eps_prev {
        return Err(Error::BoundViolated(format!("restricted undefined set has density {de} above eps_{}", r - 1)));
    }
    let j = rich_rec(c, &t_prime, &rest, trail)?;
    let lam = ratio(sub_space.lambda_accel(&c.class(j), false), (t_prime.len() as u128).pow(5));
    if lam < &eps_prev * &eps_prev {
        return Err(Error::BoundViolated(format!("level {}: Lambda_T'(A_{j}) = {lam} below eps^2", r - 1)));
    }
    Ok(j)
}

/// A monochromatic triple of distinct points (t1, u), (t2, u), (t3, t2 - t1)
/// in a colouring of [N] x [N] (1-based; `colors[(t-1) * N + (u-1)]`).
/// Returns the lexicographically first (t1, t2, t3, u).
pub fn grid_triple_search(n: usize, colors: &[u32]) -> Result<Option<(usize, usize, usize, usize)>> {
    pre(n >= 1 && n <= 200, || format!("N = {n} outside 1..=200"))?;
    pre(colors.len() == n * n, || format!("expected {} cells", n * n))?;
    let col = |t: usize, u: usize| colors[(t - 1) * n + (u - 1)];
    for t1 in 1..=n {
        for t2 in t1 + 1..=n {
            let w = t2 - t1;
            for u in 1..=n {
                let c = col(t1, u);
                if col(t2, u) != c {
                    continue;
                }
                let hit = (1..=n).find(|&t3| col(t3, w) == c && (t3, w) != (t1, u) && (t3, w) != (t2, u));
                if let Some(t3) = hit {
                    return Ok(Some((t1, t2, t3, u)));
                }
            }
        }
    }
    Ok(None)
}
