//! Short-time Fourier analysis of slow-time signals, micro-Doppler
//! spectrograms, and the scalar detection metrics built on them.

use crate::channel::BasebandSignal;
use crate::error::{Result, SimError};
use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowShape {
    Hann,
    Hamming,
    Rect,
}

/// Analysis window for the sliding DFT.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WindowSpec {
    /// Window length, seconds.
    pub duration: f64,
    pub shape: WindowShape,
    /// Frame advance, seconds.
    pub hop: f64,
    /// Zero-padding factor: the FFT size is the next power of two at or
    /// above `window length * fft_pad`.
    pub fft_pad: usize,
}

impl Default for WindowSpec {
    fn default() -> Self {
        Self {
            duration: 0.3,
            shape: WindowShape::Hann,
            hop: 0.025,
            fft_pad: 4,
        }
    }
}

impl WindowSpec {
    pub fn validate(&self, fs: f64) -> Result<()> {
        if !(self.hop > 0.0 && self.hop <= self.duration) {
            return Err(SimError::Config(format!(
                "hop {} must be in (0, window duration {}]",
                self.hop, self.duration
            )));
        }
        if self.duration * fs < 8.0 {
            return Err(SimError::Config(
                "window shorter than 8 samples".into(),
            ));
        }
        if self.fft_pad == 0 {
            return Err(SimError::Config("fft_pad must be at least 1".into()));
        }
        Ok(())
    }

    pub fn window_len(&self, fs: f64) -> usize {
        (self.duration * fs).round() as usize
    }

    pub fn hop_len(&self, fs: f64) -> usize {
        ((self.hop * fs).round() as usize).max(1)
    }

    pub fn fft_size(&self, fs: f64) -> usize {
        let target = self.window_len(fs) * self.fft_pad;
        let mut n = 1;
        while n < target {
            n *= 2;
        }
        n
    }

    fn taps(&self, n: usize) -> Vec<f64> {
        use std::f64::consts::PI;
        (0..n)
            .map(|i| {
                let x = 2.0 * PI * i as f64 / (n as f64 - 1.0);
                match self.shape {
                    WindowShape::Hann => 0.5 - 0.5 * x.cos(),
                    WindowShape::Hamming => 0.54 - 0.46 * x.cos(),
                    WindowShape::Rect => 1.0,
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Db,
}

/// Time-frequency magnitude matrix. Linear scale holds |STFT|^2 normalized
/// by the window length; dB scale is peak-normalized with values in
/// [-dynamic_range, 0].
#[derive(Debug, Clone)]
pub struct Spectrogram {
    /// Frame-center times, seconds.
    pub times: Vec<f64>,
    /// Frequency axis, Hz, ascending over (-fs/2, fs/2].
    pub freqs: Vec<f64>,
    /// `mag[frame][bin]`.
    pub mag: Vec<Vec<f64>>,
    pub scale: Scale,
}

/// Two-sided sliding-window DFT of a complex slow-time signal. Frame `k`
/// covers samples `k*hop .. k*hop + window_len`; its center time is stored.
pub fn stft(x: &BasebandSignal, w: &WindowSpec) -> Result<Spectrogram> {
    w.validate(x.fs)?;
    let n_win = w.window_len(x.fs);
    if x.samples.len() < n_win {
        return Err(SimError::InvalidInput(format!(
            "signal of {} samples is shorter than the {} sample window",
            x.samples.len(),
            n_win
        )));
    }
    let hop = w.hop_len(x.fs);
    let n_fft = w.fft_size(x.fs);
    let taps = w.taps(n_win);
    let fft = FftPlanner::new().plan_fft_forward(n_fft);

    let mut times = Vec::new();
    let mut mag = Vec::new();
    let mut buf = vec![Complex64::new(0.0, 0.0); n_fft];
    let mut offset = 0;
    while offset + n_win <= x.samples.len() {
        for slot in buf.iter_mut() {
            *slot = Complex64::new(0.0, 0.0);
        }
        for i in 0..n_win {
            buf[i] = x.samples[offset + i] * taps[i];
        }
        fft.process(&mut buf);
        // fftshift to an ascending axis ending at +fs/2
        let mut row = vec![0.0; n_fft];
        for (k, v) in buf.iter().enumerate() {
            let shifted = (k + n_fft / 2) % n_fft;
            row[shifted] = v.norm_sqr() / n_win as f64;
        }
        mag.push(row);
        times.push(x.t0 + (offset as f64 + (n_win as f64 - 1.0) / 2.0) / x.fs);
        offset += hop;
    }
    let freqs: Vec<f64> = (0..n_fft)
        .map(|i| (i as f64 - n_fft as f64 / 2.0 + 1.0) * x.fs / n_fft as f64)
        .collect();
    Ok(Spectrogram {
        times,
        freqs,
        mag,
        scale: Scale::Linear,
    })
}

/// Peak-normalized dB conversion, floor-clamped at `-dynamic_range_db`.
pub fn to_db(s: &Spectrogram, dynamic_range_db: f64) -> Result<Spectrogram> {
    if s.scale != Scale::Linear {
        return Err(SimError::InvalidInput("spectrogram already in dB".into()));
    }
    let peak = s
        .mag
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0_f64, |a, &b| a.max(b));
    if peak <= 0.0 {
        return Err(SimError::InvalidInput(
            "cannot scale an all-zero spectrogram".into(),
        ));
    }
    let mag = s
        .mag
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| (10.0 * (v / peak).log10()).max(-dynamic_range_db))
                .collect()
        })
        .collect();
    Ok(Spectrogram {
        times: s.times.clone(),
        freqs: s.freqs.clone(),
        mag,
        scale: Scale::Db,
    })
}

/// Mean over frames of the linear magnitude summed over `f_lo <= |f| <=
/// f_hi`, skipping bins inside the DC exclusion zone.
pub fn doppler_band_power(
    s: &Spectrogram,
    f_lo: f64,
    f_hi: f64,
    exclude_dc_halfwidth: f64,
) -> Result<f64> {
    if s.scale != Scale::Linear {
        return Err(SimError::InvalidInput(
            "band power needs a linear-scale spectrogram".into(),
        ));
    }
    if f_lo >= f_hi {
        return Err(SimError::InvalidInput("empty frequency band".into()));
    }
    let bins: Vec<usize> = s
        .freqs
        .iter()
        .enumerate()
        .filter(|(_, &f)| f.abs() >= f_lo && f.abs() <= f_hi && f.abs() >= exclude_dc_halfwidth)
        .map(|(i, _)| i)
        .collect();
    if bins.is_empty() {
        return Err(SimError::InvalidInput(
            "frequency band selects no bins".into(),
        ));
    }
    let total: f64 = s
        .mag
        .iter()
        .map(|row| bins.iter().map(|&i| row[i]).sum::<f64>())
        .sum();
    Ok(total / s.mag.len() as f64)
}

/// Per-frame frequency of the strongest bin outside the DC exclusion zone,
/// or `None` where that bin sits below `threshold_db` (relative to the
/// spectrogram peak). Expects a dB-scale input.
pub fn peak_doppler_track(
    s: &Spectrogram,
    threshold_db: f64,
    exclude_dc_halfwidth: f64,
) -> Result<Vec<(f64, Option<f64>)>> {
    if s.scale != Scale::Db {
        return Err(SimError::InvalidInput(
            "peak track needs a dB-scale spectrogram".into(),
        ));
    }
    let bins: Vec<usize> = s
        .freqs
        .iter()
        .enumerate()
        .filter(|(_, &f)| f.abs() >= exclude_dc_halfwidth)
        .map(|(i, _)| i)
        .collect();
    if bins.is_empty() {
        return Err(SimError::InvalidInput(
            "DC exclusion removes every bin".into(),
        ));
    }
    Ok(s.times
        .iter()
        .zip(&s.mag)
        .map(|(&t, row)| {
            let (best, val) = bins
                .iter()
                .map(|&i| (i, row[i]))
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            (t, (val >= threshold_db).then(|| s.freqs[best]))
        })
        .collect())
}

impl Spectrogram {
    /// CSV matrix: first row is the frequency axis (empty corner cell),
    /// each following row is a frame time followed by its magnitudes.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(
            &std::iter::once(String::new())
                .chain(self.freqs.iter().map(|f| format!("{f:.6}")))
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push('\n');
        for (t, row) in self.times.iter().zip(&self.mag) {
            out.push_str(
                &std::iter::once(format!("{t:.6}"))
                    .chain(row.iter().map(|v| format!("{v:.6e}")))
                    .collect::<Vec<_>>()
                    .join(","),
            );
            out.push('\n');
        }
        out
    }

    /// Binary 8-bit PGM: rows are frequencies descending, columns frames;
    /// 0 dB maps to 255 and `-dynamic_range_db` to 0 via
    /// round(255 (v + R) / R). Requires a dB-scale spectrogram.
    pub fn to_pgm(&self, dynamic_range_db: f64) -> Result<Vec<u8>> {
        if self.scale != Scale::Db {
            return Err(SimError::InvalidInput(
                "PGM export needs a dB-scale spectrogram".into(),
            ));
        }
        let h = self.freqs.len();
        let wdt = self.times.len();
        let mut out = format!("P5\n{wdt} {h}\n255\n").into_bytes();
        out.reserve(h * wdt);
        for fi in (0..h).rev() {
            for frame in &self.mag {
                let v = frame[fi].clamp(-dynamic_range_db, 0.0);
                let level = (255.0 * (v + dynamic_range_db) / dynamic_range_db).round();
                out.push(level.clamp(0.0, 255.0) as u8);
            }
        }
        Ok(out)
    }
}
