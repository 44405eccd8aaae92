#pragma once

// Frame structures for the TR mode: NR numerology, the FDD downlink/uplink
// pair with its frequency-switching subframe, and the TDD frame with the
// hold/release superframe.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace trsim::frames {

inline constexpr int kSubframesPerFrame = 10;
inline constexpr int kMaxMu = 4;

struct Numerology {
    int mu = 0;
    double subcarrier_spacing_khz = 15.0;
    int slots_per_subframe = 1;

    int slots_per_frame() const noexcept { return kSubframesPerFrame * slots_per_subframe; }
    friend bool operator==(const Numerology&, const Numerology&) = default;
};

/// 15 kHz * 2^mu spacing, 2^mu slots per 1 ms subframe. mu in [0, 4].
Numerology make_numerology(int mu);

enum class SlotKind { Downlink, Uplink, Guard, FreqSwitch0, FreqSwitch1, Hold, Release };
inline constexpr std::size_t kSlotKindCount = 7;

/// Single-character dump code: D U G 0 1 H R.
char slot_code(SlotKind kind) noexcept;
std::string_view to_string(SlotKind kind) noexcept;

enum class Duplex { FddDownlink, FddUplink, Tdd };
std::string_view to_string(Duplex duplex) noexcept;

using Subframe = std::vector<SlotKind>;

struct RadioFrame {
    Duplex duplex = Duplex::Tdd;
    Numerology numerology;
    std::vector<Subframe> subframes;
    bool tr_active = false;

    /// Slot kind at a frame-relative slot index (subframe-major).
    SlotKind slot(int index) const;
    friend bool operator==(const RadioFrame&, const RadioFrame&) = default;
};

struct FddPair {
    RadioFrame downlink;
    RadioFrame uplink;
};

/// Position of the frequency-switching subframe in the FDD uplink frame.
inline constexpr int kDefaultSwitchSubframe = 0;

/// Downlink frame is all Downlink. The uplink frame carries the switching
/// subframe (state slot FreqSwitch0/1 followed by Guard); with TR active the
/// other uplink subframes fall silent (Guard).
FddPair build_fdd_pair(const Numerology& num, bool tr_active,
                       int switch_subframe = kDefaultSwitchSubframe);

/// Per-subframe direction of a TDD configuration. Special is the LTE
/// special subframe (DwPTS / guard / UpPTS); the one at the superframe
/// position becomes the superframe carrying the Hold/Release slot.
enum class SubframeDirection { Downlink, Uplink, Special };

/// Parses a pattern such as "DSUUUDSUUU" or "DSUUU-DSUUU" (D, U, S; dashes
/// are ignored). Throws DomainError unless exactly 10 directions remain.
std::vector<SubframeDirection> parse_tdd_pattern(std::string_view text);
std::string format_tdd_pattern(std::span<const SubframeDirection> pattern);

inline constexpr std::string_view kDefaultTddPattern = "DSUUUDSUUU";
inline constexpr int kDefaultSuperframeSubframe = 1;

/// Slot layout of a conventional special subframe with n slots: a single
/// Guard for n = 1, otherwise DwPTS in the first half, then guard, then
/// UpPTS in the last quarter (n >= 4).
Subframe special_subframe_layout(int slots);

/// The pattern must have 10 entries and a Special entry at
/// superframe_subframe. With TR active the superframe slot is Hold and every
/// uplink slot (including UpPTS) becomes Guard; otherwise the slot is
/// Release and the pattern is emitted unchanged.
RadioFrame build_tdd_frame(const Numerology& num, std::span<const SubframeDirection> pattern,
                           bool tr_active, int superframe_subframe = kDefaultSuperframeSubframe);

struct Violation {
    std::string invariant;
    int subframe = -1;  // -1 when the finding concerns the whole frame
    int slot = -1;
    std::string detail;
};

std::string to_string(const Violation& v);

/// Returns every broken frame invariant; empty means the frame is valid.
std::vector<Violation> validate_frame(const RadioFrame& frame);

class SlotCensus {
public:
    int operator[](SlotKind kind) const noexcept { return counts_[static_cast<std::size_t>(kind)]; }
    int& operator[](SlotKind kind) noexcept { return counts_[static_cast<std::size_t>(kind)]; }
    int total() const noexcept;
    friend bool operator==(const SlotCensus&, const SlotCensus&) = default;

private:
    std::array<int, kSlotKindCount> counts_{};
};

SlotCensus slot_census(const RadioFrame& frame);

/// One line per subframe, one code character per slot.
std::string dump_frame(const RadioFrame& frame);

}  // namespace trsim::frames
