//! A deliberately naive second implementation of kites over ℤ, written from
//! the case tables with plain `i64` vectors. Used as an oracle for the
//! library.

#![allow(dead_code)]

use kites::{BinOp, Element, Shape};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum E {
    L(Vec<i64>),
    U(Vec<i64>),
}

#[derive(Clone, Debug)]
pub struct NK {
    pub i: usize,
    pub j: usize,
    pub lam: Vec<usize>,
    pub rho: Vec<usize>,
}

impl NK {
    pub fn new(i: usize, j: usize, lam: &[usize], rho: &[usize]) -> Self {
        NK {
            i,
            j,
            lam: lam.to_vec(),
            rho: rho.to_vec(),
        }
    }

    pub fn from_shape(s: &Shape) -> Self {
        let f = s.finite_maps().unwrap();
        NK::new(f.i_size(), f.j_size(), f.lambda(), f.rho())
    }

    pub fn shape(&self) -> Shape {
        Shape::finite(self.i, self.j, self.lam.clone(), self.rho.clone(), 1).unwrap()
    }

    fn inv(map: &[usize], i: usize) -> Option<usize> {
        map.iter().position(|&x| x == i)
    }

    pub fn one(&self) -> E {
        E::U(vec![0; self.i])
    }

    pub fn zero(&self) -> E {
        E::L(vec![0; self.j])
    }

    pub fn leq(&self, x: &E, y: &E) -> bool {
        match (x, y) {
            (E::L(_), E::U(_)) => true,
            (E::U(_), E::L(_)) => false,
            (E::L(a), E::L(b)) | (E::U(a), E::U(b)) => a.iter().zip(b).all(|(p, q)| p <= q),
        }
    }

    pub fn meet(&self, x: &E, y: &E) -> E {
        match (x, y) {
            (E::L(_), E::U(_)) => x.clone(),
            (E::U(_), E::L(_)) => y.clone(),
            (E::L(a), E::L(b)) => E::L(a.iter().zip(b).map(|(p, q)| *p.min(q)).collect()),
            (E::U(a), E::U(b)) => E::U(a.iter().zip(b).map(|(p, q)| *p.min(q)).collect()),
        }
    }

    pub fn join(&self, x: &E, y: &E) -> E {
        match (x, y) {
            (E::L(_), E::U(_)) => y.clone(),
            (E::U(_), E::L(_)) => x.clone(),
            (E::L(a), E::L(b)) => E::L(a.iter().zip(b).map(|(p, q)| *p.max(q)).collect()),
            (E::U(a), E::U(b)) => E::U(a.iter().zip(b).map(|(p, q)| *p.max(q)).collect()),
        }
    }

    pub fn mul(&self, x: &E, y: &E) -> E {
        match (x, y) {
            (E::U(a), E::U(b)) => E::U(a.iter().zip(b).map(|(p, q)| p + q).collect()),
            (E::U(a), E::L(f)) => E::L((0..self.j).map(|j| (a[self.lam[j]] + f[j]).max(0)).collect()),
            (E::L(f), E::U(a)) => E::L((0..self.j).map(|j| (f[j] + a[self.rho[j]]).max(0)).collect()),
            (E::L(_), E::L(_)) => self.zero(),
        }
    }

    pub fn ldiv(&self, x: &E, y: &E) -> E {
        match (x, y) {
            (E::U(a), E::U(b)) => E::U(a.iter().zip(b).map(|(p, q)| (q - p).min(0)).collect()),
            (E::U(a), E::L(f)) => E::L((0..self.j).map(|j| f[j] - a[self.lam[j]]).collect()),
            (E::L(f), E::L(g)) => E::U(
                (0..self.i)
                    .map(|i| match Self::inv(&self.rho, i) {
                        Some(k) => (g[k] - f[k]).min(0),
                        None => 0,
                    })
                    .collect(),
            ),
            (E::L(_), E::U(_)) => self.one(),
        }
    }

    pub fn rdiv(&self, x: &E, y: &E) -> E {
        match (x, y) {
            (E::U(b), E::U(a)) => E::U(a.iter().zip(b).map(|(p, q)| (q - p).min(0)).collect()),
            (E::L(f), E::U(a)) => E::L((0..self.j).map(|j| f[j] - a[self.rho[j]]).collect()),
            (E::L(g), E::L(f)) => E::U(
                (0..self.i)
                    .map(|i| match Self::inv(&self.lam, i) {
                        Some(k) => (g[k] - f[k]).min(0),
                        None => 0,
                    })
                    .collect(),
            ),
            (E::U(_), E::L(_)) => self.one(),
        }
    }

    pub fn apply(&self, op: BinOp, x: &E, y: &E) -> E {
        match op {
            BinOp::Meet => self.meet(x, y),
            BinOp::Join => self.join(x, y),
            BinOp::Mul => self.mul(x, y),
            BinOp::LDiv => self.ldiv(x, y),
            BinOp::RDiv => self.rdiv(x, y),
        }
    }

    pub fn lneg(&self, x: &E) -> E {
        self.ldiv(x, &self.zero())
    }

    pub fn rneg(&self, x: &E) -> E {
        self.rdiv(&self.zero(), x)
    }

    /// Every element with entries of magnitude ≤ m, in no particular order.
    pub fn all(&self, m: i64) -> Vec<E> {
        fn vecs(len: usize, vals: &[i64]) -> Vec<Vec<i64>> {
            let mut out = vec![vec![]];
            for _ in 0..len {
                out = out
                    .into_iter()
                    .flat_map(|v| {
                        vals.iter().map(move |&x| {
                            let mut w = v.clone();
                            w.push(x);
                            w
                        })
                    })
                    .collect();
            }
            out
        }
        let pos: Vec<i64> = (0..=m).collect();
        let neg: Vec<i64> = (0..=m).map(|x| -x).collect();
        let mut out: Vec<E> = vecs(self.j, &pos).into_iter().map(E::L).collect();
        out.extend(vecs(self.i, &neg).into_iter().map(E::U));
        out
    }

    pub fn to_lib(&self, s: &Shape, x: &E) -> Element {
        match x {
            E::U(a) => s.upper(a).unwrap(),
            E::L(f) => s.lower(f).unwrap(),
        }
    }
}

/// All shapes with |I| ≤ max_i, built independently of the library's census.
pub fn census(max_i: usize) -> Vec<NK> {
    fn perms(len: usize, n: usize) -> Vec<Vec<usize>> {
        if len == 0 {
            return vec![vec![]];
        }
        let mut out = vec![];
        for p in perms(len - 1, n) {
            for x in 0..n {
                if !p.contains(&x) {
                    let mut q = p.clone();
                    q.push(x);
                    out.push(q);
                }
            }
        }
        out
    }
    let mut out = vec![];
    for i in 0..=max_i {
        for j in 0..=i {
            for l in perms(j, i) {
                for r in perms(j, i) {
                    out.push(NK::new(i, j, &l, &r));
                }
            }
        }
    }
    out
}
