use crate::perm::Perm;
use std::sync::LazyLock;

/// Nontrivial elements of the Klein four-group on labels `{0,1,2,3}`; bit
/// patterns `1, 2, 3` add by XOR.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum V4 {
    /// (0 1)(2 3)
    A = 1,
    /// (0 2)(1 3)
    B = 2,
    /// (0 3)(1 2)
    C = 3,
}

impl V4 {
    pub fn perm(self) -> Perm {
        v4_perm(self as u8)
    }
}

pub(crate) fn v4_perm(bits: u8) -> Perm {
    let t = bits as usize;
    // the double transposition sending 0 to t
    let img: Vec<usize> = (0..4).map(|i| i ^ t).collect();
    Perm::from_images0(img).unwrap()
}

fn v4_bits(p: &Perm) -> Option<u8> {
    let t = p.apply(0);
    (v4_perm(t as u8) == *p).then_some(t as u8)
}

/// Key of a label permutation: its images packed two bits each.
pub fn s4_code(img: &[u8; 4]) -> u8 {
    img[0] << 6 | img[1] << 4 | img[2] << 2 | img[3]
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct S4Split {
    /// Index of the S3 image in [`Tables::s3`].
    pub s: u8,
    /// Bits of `v` in `a = v·ι(s)`.
    pub v: u8,
}

pub(crate) struct Tables {
    /// The six permutations of the pair partitions
    /// `{01|23}, {02|13}, {03|12}`, in lexicographic image order.
    pub s3: Vec<Perm>,
    pub is_transposition: [bool; 6],
    iota: Vec<Perm>,
    /// Canonical representative of `v + (s−1)V4`.
    class: [[u8; 4]; 6],
    pub by_code: [S4Split; 256],
}

/// Image of a label permutation on the pair partitions.
pub(crate) fn partition_action(a: &Perm) -> Perm {
    let img: Vec<usize> = (1..4)
        .map(|t| {
            // partition t-1 pairs 0 with t; find the partner of 0 in its image
            let (x, y) = (a.apply(0), a.apply(t));
            let partner = if x == 0 {
                y
            } else if y == 0 {
                x
            } else {
                // 0 sits in the complementary pair
                let rest: Vec<usize> = (0..4).filter(|&u| u != 0 && u != t).collect();
                let (p, q) = (a.apply(rest[0]), a.apply(rest[1]));
                if p == 0 {
                    q
                } else {
                    p
                }
            };
            partner - 1
        })
        .collect();
    Perm::from_images0(img).unwrap()
}

impl Tables {
    fn build() -> Tables {
        let mut s3: Vec<Perm> = (0..6)
            .map(|i| {
                let a = i / 2;
                let b = (0..3).filter(|&x| x != a).nth(i % 2).unwrap();
                let c = 3 - a - b;
                Perm::from_images0(vec![a, b, c]).unwrap()
            })
            .collect();
        s3.sort();
        let is_transposition = std::array::from_fn(|i| s3[i].cycle_type() == vec![2, 1]);
        let s4: Vec<Perm> = crate::perm::PermGroup::symmetric(4).elements();
        let idx = |p: &Perm| s3.iter().position(|q| q == p).unwrap();
        let mut iota = vec![Perm::identity(4); 6];
        for a in &s4 {
            if a.apply(3) == 3 {
                iota[idx(&partition_action(a))] = a.clone();
            }
        }
        let mut class = [[0u8; 4]; 6];
        for s in 0..6 {
            let lift = &iota[s];
            let image: Vec<u8> = (0..4u8)
                .map(|w| {
                    let wp = v4_perm(w);
                    v4_bits(&wp.conjugate_by(lift)).unwrap() ^ w
                })
                .collect();
            for v in 0..4u8 {
                class[s][v as usize] = image.iter().map(|&d| v ^ d).min().unwrap();
            }
        }
        let mut by_code = [S4Split::default(); 256];
        for a in &s4 {
            let s = idx(&partition_action(a));
            let v = v4_bits(&a.compose(&iota[s].inverse())).expect("a·ι(s)⁻¹ lies in V4");
            let img: [u8; 4] = std::array::from_fn(|i| a.apply(i) as u8);
            by_code[s4_code(&img) as usize] = S4Split { s: s as u8, v };
        }
        Tables { s3, is_transposition, iota, class, by_code }
    }

    pub fn iota(&self, s: u8) -> Perm {
        self.iota[s as usize].clone()
    }

    pub fn split(&self, a: &Perm) -> S4Split {
        let img: [u8; 4] = std::array::from_fn(|i| a.apply(i) as u8);
        self.by_code[s4_code(&img) as usize]
    }
}

/// The S3 element with index `s`, as a permutation of the three pair partitions.
pub fn fiber_perm(s: u8) -> Perm {
    TABLES.s3[s as usize].clone()
}

pub(crate) static TABLES: LazyLock<Tables> = LazyLock::new(Tables::build);

/// Canonical representative of the class of `v` in `V4/(s−1)V4`; zero means
/// the class vanishes.
pub fn loc_class(s: u8, v: u8) -> u8 {
    TABLES.class[s as usize][v as usize]
}
