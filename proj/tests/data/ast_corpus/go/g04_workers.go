package corpus

import "sync"

func ParallelSum(nums []int, workers int) int {
	var wg sync.WaitGroup
	results := make(chan int, workers)
	chunk := (len(nums) + workers - 1) / workers
	for w := 0; w < workers; w++ {
		lo := w * chunk
		hi := lo + chunk
		if hi > len(nums) {
			hi = len(nums)
		}
		if lo >= hi {
			continue
		}
		wg.Add(1)
		go func(part []int) {
			defer wg.Done()
			s := 0
			for _, v := range part {
				s += v
			}
			results <- s
		}(nums[lo:hi])
	}
	wg.Wait()
	close(results)
	total := 0
	for s := range results {
		total += s
	}
	return total
}
