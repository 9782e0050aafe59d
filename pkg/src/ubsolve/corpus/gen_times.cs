(>= (times 0 (var y)) 0)
(>= (times (+ (var x) 1) (var y)) (plus (var y) (times (var x) (var y))))
(>= (plus (var x) (var y)) (+ (var x) (var y)))
