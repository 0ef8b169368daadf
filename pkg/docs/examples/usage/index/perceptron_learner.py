from online_boosting import AdaBoostOL, Label
from online_boosting.harness import generate


class PerceptronLearner:
    def __init__(self) -> None:
        self.weights: dict[int, float] = {}

    def predict(self, features: dict[int, float]) -> Label:
        score = sum(self.weights.get(i, 0.0) * v for i, v in features.items())
        return Label.POSITIVE if score >= 0 else Label.NEGATIVE

    def update(
        self, features: dict[int, float], label: Label, weight: float
    ) -> None:
        if weight == 0 or self.predict(features) == label:
            return
        for i, v in features.items():
            self.weights[i] = self.weights.get(i, 0.0) + weight * label * v


booster = AdaBoostOL([PerceptronLearner() for _ in range(10)], seed=0)
for example in generate("gaussian-majority", 2000, seed=0):
    booster.predict(example.features)
    booster.observe(example.features, example.label)
