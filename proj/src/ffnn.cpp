#include "scdec/ffnn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "scdec/rng.hpp"

namespace scdec {

namespace {

constexpr double kLogFloor = 1e-300;

struct Gradients {
    Eigen::MatrixXd w1, w2;
    Eigen::VectorXd b1, b2;
};

int groups_of(const FFNNModel& m) {
    return m.head_kind == HeadKind::kSingleSoftmax4 ? 1 : m.out_dim / 4;
}

// Mean per-sample cross-entropy over the batch (columns of X); grouped heads
// sum their per-group losses. Fills grads when non-null.
double loss_and_grad(const FFNNModel& m, const Eigen::MatrixXd& X,
                     const std::vector<std::uint8_t>& labels, Gradients* grads) {
    const auto B = X.cols();
    const int n_groups = groups_of(m);
    if (labels.size() != static_cast<std::size_t>(B) * n_groups) {
        throw std::invalid_argument("loss_and_grad: label count does not match batch");
    }
    const Eigen::MatrixXd H = (m.w1 * X).colwise() + m.b1;
    const Eigen::MatrixXd A = H.cwiseMax(0.0);
    const Eigen::MatrixXd L = (m.w2 * A).colwise() + m.b2;

    Eigen::MatrixXd G(m.out_dim, B);
    double loss = 0.0;
    for (Eigen::Index c = 0; c < B; ++c) {
        for (int g = 0; g < n_groups; ++g) {
            const int base = 4 * g;
            double mx = L(base, c);
            for (int k = 1; k < 4; ++k) mx = std::max(mx, L(base + k, c));
            double sum = 0.0;
            double e[4];
            for (int k = 0; k < 4; ++k) {
                e[k] = std::exp(L(base + k, c) - mx);
                sum += e[k];
            }
            const int label = labels[static_cast<std::size_t>(c) * n_groups + g];
            for (int k = 0; k < 4; ++k) {
                const double p = e[k] / sum;
                G(base + k, c) = (p - (k == label ? 1.0 : 0.0)) / static_cast<double>(B);
                if (k == label) loss -= std::log(std::max(p, kLogFloor));
            }
        }
    }
    if (grads) {
        grads->w2 = G * A.transpose();
        grads->b2 = G.rowwise().sum();
        Eigen::MatrixXd dA = m.w2.transpose() * G;
        dA = (H.array() > 0.0).select(dA, 0.0);
        grads->w1 = dA * X.transpose();
        grads->b1 = dA.rowwise().sum();
    }
    return loss / static_cast<double>(B);
}

// In-place Fisher-Yates with an unbiased bounded draw.
void shuffle_indices(std::vector<std::uint32_t>& idx, PhiloxRng& rng) {
    for (std::size_t i = idx.size() - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(
            (static_cast<unsigned __int128>(rng.next_u64()) * (i + 1)) >> 64);
        std::swap(idx[i], idx[j]);
    }
}

void fill_features(const Dataset& data, const std::uint32_t* idx, Eigen::Index count,
                   Eigen::MatrixXd& X) {
    for (Eigen::Index b = 0; b < count; ++b) {
        const SyndromeVector s = data.syndrome(idx[b]);
        for (Eigen::Index i = 0; i < X.rows(); ++i) X(i, b) = s.get(i) ? 1.0 : 0.0;
    }
}

void fill_labels(const FFNNModel& m, const Dataset& data, const std::uint32_t* idx,
                 Eigen::Index count, std::vector<std::uint8_t>& labels) {
    const int n_groups = groups_of(m);
    labels.resize(static_cast<std::size_t>(count) * n_groups);
    for (Eigen::Index b = 0; b < count; ++b) {
        if (m.head_kind == HeadKind::kSingleSoftmax4) {
            labels[b] = static_cast<std::uint8_t>(data.label(idx[b]));
        } else {
            const PauliOp ped = data.ped_correction(idx[b]);
            for (int q = 0; q < n_groups; ++q) {
                labels[static_cast<std::size_t>(b) * n_groups + q] = static_cast<std::uint8_t>(
                    (ped.x.get(q) ? 1 : 0) | (ped.z.get(q) ? 2 : 0));
            }
        }
    }
}

int argmax4(const double* v) {
    int best = 0;
    for (int k = 1; k < 4; ++k) {
        if (v[k] > v[best]) best = k;
    }
    return best;
}

void check_model_fits(const FFNNModel& m, const Dataset& data) {
    const int n = data.distance() * data.distance();
    if (m.in_dim != n - 1) {
        throw std::invalid_argument("model in_dim " + std::to_string(m.in_dim) +
                                    " does not match syndrome length " + std::to_string(n - 1));
    }
    if (m.head_kind == HeadKind::kGroupedSoftmax4 && m.out_dim != 4 * n) {
        throw std::invalid_argument("grouped head out_dim must be 4*d^2");
    }
}

}  // namespace

const char* to_string(HeadKind head) {
    return head == HeadKind::kSingleSoftmax4 ? "single_softmax_4" : "grouped_softmax_4xd2";
}

HeadKind head_kind_from_string(std::string_view name) {
    if (name == "single_softmax_4") return HeadKind::kSingleSoftmax4;
    if (name == "grouped_softmax_4xd2") return HeadKind::kGroupedSoftmax4;
    throw std::invalid_argument("unknown head kind: " + std::string(name));
}

FFNNModel FFNNModel::init(int in_dim, int hidden_dim, int out_dim, HeadKind head,
                          std::uint64_t seed) {
    if (in_dim < 1 || hidden_dim < 1 || out_dim < 1) {
        throw std::invalid_argument("FFNNModel::init: dims must be >= 1");
    }
    if (head == HeadKind::kSingleSoftmax4 && out_dim != 4) {
        throw std::invalid_argument("single head requires out_dim == 4");
    }
    if (head == HeadKind::kGroupedSoftmax4 && out_dim % 4 != 0) {
        throw std::invalid_argument("grouped head requires out_dim divisible by 4");
    }
    FFNNModel m;
    m.in_dim = in_dim;
    m.hidden_dim = hidden_dim;
    m.out_dim = out_dim;
    m.head_kind = head;
    m.seed = seed;
    m.w1.resize(hidden_dim, in_dim);
    m.b1 = Eigen::VectorXd::Zero(hidden_dim);
    m.w2.resize(out_dim, hidden_dim);
    m.b2 = Eigen::VectorXd::Zero(out_dim);

    PhiloxRng rng(seed, 0, 0);
    const double lim1 = std::sqrt(6.0 / in_dim);
    for (Eigen::Index i = 0; i < m.w1.size(); ++i) {
        m.w1.data()[i] = (2.0 * rng.next_double() - 1.0) * lim1;
    }
    const double lim2 = std::sqrt(6.0 / hidden_dim);
    for (Eigen::Index i = 0; i < m.w2.size(); ++i) {
        m.w2.data()[i] = (2.0 * rng.next_double() - 1.0) * lim2;
    }
    return m;
}

Eigen::VectorXd FFNNModel::forward(const Eigen::VectorXd& x) const {
    if (x.size() != in_dim) {
        throw std::invalid_argument("forward: input length " + std::to_string(x.size()) +
                                    ", expected " + std::to_string(in_dim));
    }
    return w2 * (w1 * x + b1).cwiseMax(0.0) + b2;
}

Eigen::MatrixXd FFNNModel::forward_batch(const Eigen::MatrixXd& x) const {
    if (x.rows() != in_dim) {
        throw std::invalid_argument("forward_batch: row count does not match in_dim");
    }
    return (w2 * ((w1 * x).colwise() + b1).cwiseMax(0.0)).colwise() + b2;
}

LogicalClass FFNNModel::predict_class(const SyndromeVector& s) const {
    if (head_kind != HeadKind::kSingleSoftmax4) {
        throw std::invalid_argument("predict_class requires the single-softmax head");
    }
    const Eigen::VectorXd logits = forward(syndrome_features(s));
    return static_cast<LogicalClass>(argmax4(logits.data()));
}

PauliOp FFNNModel::predict_correction(const SyndromeVector& s) const {
    if (head_kind != HeadKind::kGroupedSoftmax4) {
        throw std::invalid_argument("predict_correction requires the grouped head");
    }
    const Eigen::VectorXd logits = forward(syndrome_features(s));
    const int n = out_dim / 4;
    PauliOp p(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
        const int state = argmax4(logits.data() + 4 * q);
        p.x.set(q, state & 1);
        p.z.set(q, state & 2);
    }
    return p;
}

Eigen::VectorXd syndrome_features(const SyndromeVector& s) {
    Eigen::VectorXd x(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) x[i] = s.get(i) ? 1.0 : 0.0;
    return x;
}

int default_hidden_n(HeadKind head, int distance) {
    const bool single = head == HeadKind::kSingleSoftmax4;
    switch (distance) {
        case 3: return single ? 20 : 5;
        case 5: return single ? 40 : 15;
        case 7: return single ? 60 : 25;
        case 9: return single ? 80 : 35;
        default:
            throw std::invalid_argument("default_hidden_n: no tuned width for distance " +
                                        std::to_string(distance));
    }
}

TrainResult train(FFNNModel& model, const Dataset& data, const TrainConfig& cfg) {
    check_model_fits(model, data);
    if (data.size() == 0) throw std::invalid_argument("train: empty dataset");
    if (cfg.epochs < 1 || cfg.batch_size < 1 || !(cfg.learning_rate > 0.0)) {
        throw std::invalid_argument("train: invalid config");
    }
    if (!(cfg.holdout_fraction >= 0.0 && cfg.holdout_fraction < 1.0)) {
        throw std::invalid_argument("train: holdout_fraction must be in [0, 1)");
    }
    const std::size_t n = data.size();
    const std::size_t holdout = static_cast<std::size_t>(n * cfg.holdout_fraction);
    const std::size_t train_n = n - holdout;
    if (train_n < 1) throw std::invalid_argument("train: no training samples left");

    std::vector<std::uint32_t> order(train_n);
    for (std::size_t i = 0; i < train_n; ++i) order[i] = static_cast<std::uint32_t>(i);

    Gradients g;
    Eigen::MatrixXd m_w1 = Eigen::MatrixXd::Zero(model.w1.rows(), model.w1.cols());
    Eigen::MatrixXd v_w1 = m_w1;
    Eigen::MatrixXd m_w2 = Eigen::MatrixXd::Zero(model.w2.rows(), model.w2.cols());
    Eigen::MatrixXd v_w2 = m_w2;
    Eigen::VectorXd m_b1 = Eigen::VectorXd::Zero(model.b1.size());
    Eigen::VectorXd v_b1 = m_b1;
    Eigen::VectorXd m_b2 = Eigen::VectorXd::Zero(model.b2.size());
    Eigen::VectorXd v_b2 = m_b2;
    long long t = 0;

    const auto adam_step = [&](auto& theta, auto& m_acc, auto& v_acc, const auto& grad) {
        m_acc = cfg.beta1 * m_acc + (1.0 - cfg.beta1) * grad;
        v_acc.array() = cfg.beta2 * v_acc.array() + (1.0 - cfg.beta2) * grad.array().square();
        const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
        const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
        theta.array() -=
            cfg.learning_rate * (m_acc.array() / bc1) / ((v_acc.array() / bc2).sqrt() + cfg.epsilon);
    };

    TrainResult result;
    result.train_count = train_n;
    result.holdout_count = holdout;
    result.epoch_loss.reserve(cfg.epochs);

    Eigen::MatrixXd X;
    std::vector<std::uint8_t> labels;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        PhiloxRng shuffle_rng(cfg.seed, 0x5348554646ull, static_cast<std::uint64_t>(epoch));
        shuffle_indices(order, shuffle_rng);
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < train_n; start += cfg.batch_size) {
            const auto count =
                static_cast<Eigen::Index>(std::min<std::size_t>(cfg.batch_size, train_n - start));
            X.resize(model.in_dim, count);
            fill_features(data, order.data() + start, count, X);
            fill_labels(model, data, order.data() + start, count, labels);
            ++t;
            const double batch_loss = loss_and_grad(model, X, labels, &g);
            epoch_loss += batch_loss * static_cast<double>(count);
            adam_step(model.w1, m_w1, v_w1, g.w1);
            adam_step(model.b1, m_b1, v_b1, g.b1);
            adam_step(model.w2, m_w2, v_w2, g.w2);
            adam_step(model.b2, m_b2, v_b2, g.b2);
        }
        result.epoch_loss.push_back(epoch_loss / static_cast<double>(train_n));
    }

    result.train_accuracy = accuracy(model, data, 0, train_n);
    result.holdout_accuracy = holdout > 0 ? accuracy(model, data, train_n, n) : 0.0;
    return result;
}

double accuracy(const FFNNModel& model, const Dataset& data, std::size_t begin, std::size_t end) {
    check_model_fits(model, data);
    if (end > data.size() || begin >= end) {
        throw std::invalid_argument("accuracy: bad sample range");
    }
    const int n_groups = groups_of(model);
    constexpr std::size_t kChunk = 1024;
    Eigen::MatrixXd X;
    std::vector<std::uint32_t> idx;
    std::vector<std::uint8_t> labels;
    std::size_t hits = 0;
    for (std::size_t start = begin; start < end; start += kChunk) {
        const std::size_t count = std::min(kChunk, end - start);
        idx.resize(count);
        for (std::size_t i = 0; i < count; ++i) idx[i] = static_cast<std::uint32_t>(start + i);
        X.resize(model.in_dim, static_cast<Eigen::Index>(count));
        fill_features(data, idx.data(), static_cast<Eigen::Index>(count), X);
        fill_labels(model, data, idx.data(), static_cast<Eigen::Index>(count), labels);
        const Eigen::MatrixXd L = model.forward_batch(X);
        for (std::size_t b = 0; b < count; ++b) {
            bool match = true;
            for (int g = 0; g < n_groups; ++g) {
                const int pred = argmax4(L.col(static_cast<Eigen::Index>(b)).data() + 4 * g);
                if (pred != labels[b * n_groups + g]) {
                    match = false;
                    break;
                }
            }
            hits += match ? 1 : 0;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(end - begin);
}

FFNNModel quantize_weights(const FFNNModel& model, int bits) {
    if (bits < 2 || bits > 16) {
        throw std::invalid_argument("quantize_weights: bits must be in [2, 16]");
    }
    const double qmax = static_cast<double>((1 << (bits - 1)) - 1);
    FFNNModel out = model;
    QuantMeta meta;
    meta.bits = bits;
    const auto quantize = [&](Eigen::MatrixXd& w) {
        const double scale = w.cwiseAbs().maxCoeff() / qmax;
        if (scale == 0.0) return 0.0;
        w = (w / scale).array().round().min(qmax).max(-qmax) * scale;
        return scale;
    };
    meta.scale_w1 = quantize(out.w1);
    meta.scale_w2 = quantize(out.w2);
    out.quant = meta;
    return out;
}

double grad_check(const FFNNModel& model, const Eigen::VectorXd& x,
                  const std::vector<std::uint8_t>& labels) {
    Gradients g;
    Eigen::MatrixXd X = x;
    const double base = loss_and_grad(model, X, labels, &g);
    (void)base;

    FFNNModel probe = model;
    const double h = 1e-5;
    double worst = 0.0;
    const auto sweep = [&](double* theta, const double* analytic, Eigen::Index count) {
        for (Eigen::Index i = 0; i < count; ++i) {
            const double keep = theta[i];
            theta[i] = keep + h;
            const double up = loss_and_grad(probe, X, labels, nullptr);
            theta[i] = keep - h;
            const double down = loss_and_grad(probe, X, labels, nullptr);
            theta[i] = keep;
            const double numeric = (up - down) / (2.0 * h);
            const double a = analytic[i];
            if (std::abs(a) < 1e-12 && std::abs(numeric) < 1e-9) continue;
            const double denom = std::max(std::abs(a) + std::abs(numeric), 1e-12);
            worst = std::max(worst, std::abs(a - numeric) / denom);
        }
    };
    sweep(probe.w1.data(), g.w1.data(), probe.w1.size());
    sweep(probe.w2.data(), g.w2.data(), probe.w2.size());
    sweep(probe.b1.data(), g.b1.data(), probe.b1.size());
    sweep(probe.b2.data(), g.b2.data(), probe.b2.size());
    return worst;
}

}  // namespace scdec
