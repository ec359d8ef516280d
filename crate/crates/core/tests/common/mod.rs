#![allow(dead_code)]

use std::cell::Cell;
use std::io::Read;
use std::rc::Rc;

use negassoc::{parse_boolean_matrix, BooleanMatrix, Itemset, Rational};
use rand::Rng;

pub const TABLE_ONE: &str = include_str!("../../../../data/table1.csv");
pub const FIGURE_ONE: &str = include_str!("../../../../data/figure1.csv");

pub const CER1: usize = 0;
pub const T: usize = 1;
pub const MESP1: usize = 2;
pub const POU5F1: usize = 3;

pub fn table_one() -> BooleanMatrix {
    parse_boolean_matrix(TABLE_ONE.as_bytes(), b',').unwrap()
}

pub fn set(items: &[usize]) -> Itemset {
    Itemset::new(items.iter().copied()).unwrap()
}

pub fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

/// Random matrix with `items <= max_items`, `transactions <= max_tx` and a
/// density drawn from [0.1, 0.9].
pub fn random_matrix<R: Rng>(rng: &mut R, max_items: usize, max_tx: usize) -> BooleanMatrix {
    let items = rng.gen_range(1..=max_items);
    let tx = rng.gen_range(1..=max_tx);
    let density = rng.gen_range(0.1..=0.9);
    let rows: Vec<Vec<bool>> = (0..tx).map(|_| (0..items).map(|_| rng.gen_bool(density)).collect()).collect();
    BooleanMatrix::from_unlabelled_rows(&rows)
}

/// minsup drawn from {1/n, 2/n, ...} capped at 9/10.
pub fn random_minsup<R: Rng>(rng: &mut R, n: usize) -> Rational {
    let cap = r(9, 10);
    let k = rng.gen_range(1..=n.max(1)) as i128;
    let v = r(k, n.max(1) as i128);
    if v > cap {
        cap
    } else {
        v
    }
}

/// Reader that records how many bytes have been handed out and how many
/// times end-of-input was observed.
pub struct PassCountingReader<R> {
    inner: R,
    pub bytes: Rc<Cell<usize>>,
    pub eof_hits: Rc<Cell<usize>>,
}

impl<R> PassCountingReader<R> {
    pub fn new(inner: R) -> Self {
        Self { inner, bytes: Rc::new(Cell::new(0)), eof_hits: Rc::new(Cell::new(0)) }
    }
}

impl<R: Read> Read for PassCountingReader<R> {
    fn read(&mut self, buf: &mut [u8]) -> std::io::Result<usize> {
        let n = self.inner.read(buf)?;
        if n == 0 && !buf.is_empty() {
            self.eof_hits.set(self.eof_hits.get() + 1);
        }
        self.bytes.set(self.bytes.get() + n);
        Ok(n)
    }
}
