# score a prediction
def grade(pred, gold):
    # exact match first
    if pred == gold:
        return 100
    if abs(pred - gold) < 5:
        return 80
    if pred is None:
        return 0
    total = len(str(pred))
    return total
print(grade(1, 2))
