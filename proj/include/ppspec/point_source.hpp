#ifndef PPSPEC_POINT_SOURCE_HPP
#define PPSPEC_POINT_SOURCE_HPP

#include "ppspec/geometry.hpp"

#include <memory>
#include <optional>
#include <string>

namespace ppspec {

/// An infinite colored Delone multiset, accessed only through window
/// queries. Implementations are deterministic and immutable, so queries may
/// be issued concurrently.
class PointSource {
public:
    virtual ~PointSource() = default;

    virtual std::string name() const = 0;
    virtual int dim() const = 0;
    virtual int colors() const = 0;
    /// Coordinates are exact elements of Z[tau].
    virtual bool exact() const = 0;
    /// A ∩ Λ for a bounded closed region A.
    virtual MultiSetPatch window(const Region& a) const = 0;
    /// Translation period in 1D, when the set is periodic.
    virtual std::optional<double> period() const { return std::nullopt; }
};

using SourcePtr = std::shared_ptr<const PointSource>;

/// Checked window query: rejects unbounded or mismatched regions.
MultiSetPatch window(const PointSource& source, const Region& a);

/// -h + Λ. Exact sources stay exact when h is exact.
class TranslatedSource final : public PointSource {
public:
    TranslatedSource(SourcePtr base, Point h);

    std::string name() const override;
    int dim() const override { return base_->dim(); }
    int colors() const override { return base_->colors(); }
    bool exact() const override { return base_->exact() && h_.is_exact(); }
    MultiSetPatch window(const Region& a) const override;
    std::optional<double> period() const override { return base_->period(); }

    const Point& shift() const { return h_; }

private:
    SourcePtr base_;
    Point h_;
};

SourcePtr translate_source(SourcePtr base, const Point& h);

/// A finite patch viewed as a source; queries outside its region throw
/// InsufficientWindowError.
class PatchSource final : public PointSource {
public:
    explicit PatchSource(MultiSetPatch patch, std::string name = "patch");

    std::string name() const override { return name_; }
    int dim() const override { return patch_.dim(); }
    int colors() const override { return patch_.colors(); }
    bool exact() const override { return exact_; }
    MultiSetPatch window(const Region& a) const override { return patch_.restricted(a); }

    const MultiSetPatch& patch() const { return patch_; }

private:
    MultiSetPatch patch_;
    std::string name_;
    bool exact_ = false;
};

} // namespace ppspec

#endif
