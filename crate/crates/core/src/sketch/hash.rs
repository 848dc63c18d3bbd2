use rand::Rng;

/// The Mersenne prime `2^61 - 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

#[inline]
pub fn mul_mod(a: u64, b: u64) -> u64 {
    let p = a as u128 * b as u128;
    let r = (p as u64 & MERSENNE_61) + (p >> 61) as u64;
    if r >= MERSENNE_61 {
        r - MERSENNE_61
    } else {
        r
    }
}

#[inline]
pub fn add_mod(a: u64, b: u64) -> u64 {
    let r = a + b;
    if r >= MERSENNE_61 {
        r - MERSENNE_61
    } else {
        r
    }
}

#[inline]
pub fn reduce(x: u64) -> u64 {
    let r = (x & MERSENNE_61) + (x >> 61);
    if r >= MERSENNE_61 {
        r - MERSENNE_61
    } else {
        r
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    base = reduce(base);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// `x -> (a*x + b) mod p` with `a != 0`: pairwise independent over `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairwiseHash {
    pub a: u64,
    pub b: u64,
}

impl PairwiseHash {
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        PairwiseHash {
            a: rng.gen_range(1..MERSENNE_61),
            b: rng.gen_range(0..MERSENNE_61),
        }
    }

    #[inline]
    pub fn eval(&self, key: u64) -> u64 {
        add_mod(mul_mod(self.a, reduce(key)), self.b)
    }
}

/// One pairwise-independent hash per row, each mapping keys into `[0, width)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashFamily {
    width: usize,
    rows: Vec<PairwiseHash>,
}

impl HashFamily {
    pub fn new<R: Rng + ?Sized>(depth: usize, width: usize, rng: &mut R) -> Self {
        assert!(depth >= 1 && width >= 1, "hash family needs depth and width >= 1");
        HashFamily {
            width,
            rows: (0..depth).map(|_| PairwiseHash::random(rng)).collect(),
        }
    }

    pub fn from_seeds(width: usize, rows: Vec<PairwiseHash>) -> Self {
        HashFamily { width, rows }
    }

    pub fn depth(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn prime_modulus(&self) -> u64 {
        MERSENNE_61
    }

    pub fn seeds(&self) -> &[PairwiseHash] {
        &self.rows
    }

    #[inline]
    pub fn hash(&self, row: usize, key: u64) -> usize {
        (self.rows[row].eval(key) % self.width as u64) as usize
    }
}
