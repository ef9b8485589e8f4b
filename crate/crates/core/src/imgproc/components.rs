use super::image::BinaryImage;

/// One 8-connected foreground component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub label: u32,
    pub size: usize,
    /// First pixel in raster order (top-most, then left-most).
    pub start: (usize, usize),
}

/// Labels 8-connected foreground components. Background is label 0;
/// components are numbered from 1 in raster order of their first pixel.
pub fn label_components(img: &BinaryImage) -> (Vec<u32>, Vec<Component>) {
    let (w, h) = (img.width(), img.height());
    let mut labels = vec![0u32; w * h];
    let mut comps = Vec::new();
    let mut stack = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if !img.get(x, y) || labels[y * w + x] != 0 {
                continue;
            }
            let label = comps.len() as u32 + 1;
            let mut size = 0;
            labels[y * w + x] = label;
            stack.push((x, y));
            while let Some((cx, cy)) = stack.pop() {
                size += 1;
                for dy in -1i64..=1 {
                    for dx in -1i64..=1 {
                        let (nx, ny) = (cx as i64 + dx, cy as i64 + dy);
                        if img.get_signed(nx, ny) {
                            let idx = ny as usize * w + nx as usize;
                            if labels[idx] == 0 {
                                labels[idx] = label;
                                stack.push((nx as usize, ny as usize));
                            }
                        }
                    }
                }
            }
            comps.push(Component {
                label,
                size,
                start: (x, y),
            });
        }
    }
    (labels, comps)
}

/// Keeps only the largest 8-connected component (earliest in raster order on ties).
pub fn largest_component(img: &BinaryImage) -> BinaryImage {
    let (labels, comps) = label_components(img);
    let Some(best) = comps
        .iter()
        .reduce(|a, b| if b.size > a.size { b } else { a })
    else {
        return img.clone();
    };
    BinaryImage::new(
        img.width(),
        img.height(),
        labels.iter().map(|&l| l == best.label).collect(),
    )
    .expect("same dimensions")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_pixels_join() {
        let img = BinaryImage::from_fn(4, 4, |x, y| x == y || (x == 3 && y == 0)).unwrap();
        let (_, comps) = label_components(&img);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].start, (0, 0));
        assert_eq!(comps[0].size, 4);
        assert_eq!(largest_component(&img).count_foreground(), 4);
    }
}
