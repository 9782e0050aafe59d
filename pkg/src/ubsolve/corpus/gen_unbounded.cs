; no natural interpretation satisfies this
(>= (f (var x)) (+ (f (var x)) 1))
