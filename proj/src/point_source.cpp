#include "ppspec/point_source.hpp"

#include <sstream>

namespace ppspec {

MultiSetPatch window(const PointSource& source, const Region& a)
{
    if (!a.bounded())
        throw std::invalid_argument("window: region is unbounded");
    if (a.dim() != source.dim())
        throw std::invalid_argument("window: region dimension does not match source");
    return source.window(a);
}

TranslatedSource::TranslatedSource(SourcePtr base, Point h) : base_(std::move(base)), h_(h)
{
    if (!base_)
        throw std::invalid_argument("TranslatedSource: null base");
    if (h_.dim != base_->dim())
        throw std::invalid_argument("TranslatedSource: shift dimension mismatch");
}

std::string TranslatedSource::name() const
{
    std::ostringstream os;
    os.precision(17);
    os << base_->name() << " - (";
    for (int i = 0; i < h_.dim; ++i)
        os << (i ? "," : "") << h_[i];
    os << ")";
    return os.str();
}

MultiSetPatch TranslatedSource::window(const Region& a) const
{
    // (-h + Λ) ∩ A = -h + (Λ ∩ (A + h))
    MultiSetPatch p = base_->window(a.translated(h_));
    std::vector<std::vector<Point>> parts = p.cluster.parts();
    for (auto& part : parts)
        for (auto& q : part)
            q = q - h_;
    return {a, Cluster::from_parts(std::move(parts), p.dim())};
}

SourcePtr translate_source(SourcePtr base, const Point& h)
{
    return std::make_shared<TranslatedSource>(std::move(base), h);
}

PatchSource::PatchSource(MultiSetPatch patch, std::string name)
    : patch_(std::move(patch)), name_(std::move(name))
{
    exact_ = patch_.size() > 0;
    for (int c = 0; c < patch_.colors(); ++c)
        for (const auto& p : patch_.cluster.part(c))
            exact_ = exact_ && p.is_exact();
}

} // namespace ppspec
